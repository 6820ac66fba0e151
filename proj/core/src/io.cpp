#include "nc/io.hpp"

#include "nc/version.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nc::io {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

json load_json(const std::string& path) {
  auto in = open_in(path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& err) {
    throw std::invalid_argument("config is not valid JSON: " +
                                std::string(err.what()));
  }
  return doc;
}

}  // namespace

void write_vector_csv(const std::string& path, const ComplexVector& v) {
  auto out = open_out(path);
  out << "index,re,im\n";
  for (Index k = 0; k < v.size(); ++k)
    out << k << ',' << fmt(v[k].real()) << ',' << fmt(v[k].imag()) << '\n';
}

ComplexVector read_vector_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<Complex> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    long long index = 0;
    double re = 0.0, im = 0.0;
    if (std::sscanf(line.c_str(), "%lld,%lf,%lf", &index, &re, &im) != 3)
      throw std::runtime_error("malformed vector row in " + path);
    values.emplace_back(re, im);
  }
  ComplexVector v(static_cast<Index>(values.size()));
  for (Index k = 0; k < v.size(); ++k)
    v[k] = values[static_cast<std::size_t>(k)];
  return v;
}

void write_scene_csv(const std::string& path, const SourceScene& scene) {
  auto out = open_out(path);
  out << "grid_index,re,im\n";
  for (Index j = 0; j < scene.sparsity(); ++j)
    out << scene.positions[static_cast<std::size_t>(j)] << ','
        << fmt(scene.amplitudes[j].real()) << ','
        << fmt(scene.amplitudes[j].imag()) << '\n';
}

SourceScene read_scene_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<Index> positions;
  std::vector<Complex> amplitudes;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    long long index = 0;
    double re = 0.0, im = 0.0;
    if (std::sscanf(line.c_str(), "%lld,%lf,%lf", &index, &re, &im) != 3)
      throw std::runtime_error("malformed scene row in " + path);
    positions.push_back(static_cast<Index>(index));
    amplitudes.emplace_back(re, im);
  }
  SourceScene scene;
  scene.positions = std::move(positions);
  scene.amplitudes.resize(static_cast<Index>(amplitudes.size()));
  for (Index j = 0; j < scene.amplitudes.size(); ++j)
    scene.amplitudes[j] = amplitudes[static_cast<std::size_t>(j)];
  return scene;
}

void write_image_csv(const std::string& path, const RealMatrix& image) {
  auto out = open_out(path);
  for (Index r = 0; r < image.rows(); ++r) {
    for (Index c = 0; c < image.cols(); ++c)
      out << (c == 0 ? "" : ",") << fmt(image(r, c));
    out << '\n';
  }
}

namespace {

template <typename T>
T take_field(json& doc, const char* name);

template <>
double take_field<double>(json& doc, const char* name) {
  if (!doc.contains(name))
    throw std::invalid_argument(std::string("config field '") + name +
                                "' is missing");
  const json value = doc.at(name);
  doc.erase(name);
  if (!value.is_number())
    throw std::invalid_argument(std::string("config field '") + name +
                                "' must be a number");
  return value.get<double>();
}

template <>
int take_field<int>(json& doc, const char* name) {
  if (!doc.contains(name))
    throw std::invalid_argument(std::string("config field '") + name +
                                "' is missing");
  const json value = doc.at(name);
  doc.erase(name);
  if (!value.is_number_integer())
    throw std::invalid_argument(std::string("config field '") + name +
                                "' must be an integer");
  return value.get<int>();
}

template <>
std::uint64_t take_field<std::uint64_t>(json& doc, const char* name) {
  if (!doc.contains(name))
    throw std::invalid_argument(std::string("config field '") + name +
                                "' is missing");
  const json value = doc.at(name);
  doc.erase(name);
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_number_integer() && value.get<long long>() >= 0)
    return static_cast<std::uint64_t>(value.get<long long>());
  throw std::invalid_argument(std::string("config field '") + name +
                              "' must be a nonnegative integer");
}

}  // namespace

ImagingConfig read_imaging_config(const std::string& path) {
  json doc = load_json(path);
  if (!doc.is_object())
    throw std::invalid_argument("config must be a JSON object");

  ImagingConfig config;
  config.num_receivers = take_field<int>(doc, "num_receivers");
  config.aperture = take_field<double>(doc, "aperture");
  config.range = take_field<double>(doc, "range");
  config.central_frequency = take_field<double>(doc, "central_frequency");
  config.bandwidth = take_field<double>(doc, "bandwidth");
  config.num_frequencies = take_field<int>(doc, "num_frequencies");
  config.wave_speed = take_field<double>(doc, "wave_speed");
  config.window_width = take_field<double>(doc, "window_width");
  config.window_depth = take_field<double>(doc, "window_depth");
  config.pixels_cross = take_field<int>(doc, "pixels_cross");
  config.pixels_range = take_field<int>(doc, "pixels_range");
  config.seed = Seed{take_field<std::uint64_t>(doc, "seed")};
  if (!doc.empty())
    throw std::invalid_argument("config field '" +
                                doc.items().begin().key() +
                                "' is not recognized");
  validate(config);
  return config;
}

void write_imaging_config(const std::string& path,
                          const ImagingConfig& config) {
  json doc;
  doc["num_receivers"] = config.num_receivers;
  doc["aperture"] = config.aperture;
  doc["range"] = config.range;
  doc["central_frequency"] = config.central_frequency;
  doc["bandwidth"] = config.bandwidth;
  doc["num_frequencies"] = config.num_frequencies;
  doc["wave_speed"] = config.wave_speed;
  doc["window_width"] = config.window_width;
  doc["window_depth"] = config.window_depth;
  doc["pixels_cross"] = config.pixels_cross;
  doc["pixels_range"] = config.pixels_range;
  doc["seed"] = config.seed.value;
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

void write_phase_diagram_csv(const std::string& path, const PhaseDiagram& pd) {
  auto out = open_out(path);
  out << "M";
  for (const double snr : pd.snr_values) out << ',' << fmt(snr);
  out << '\n';
  for (std::size_t mi = 0; mi < pd.m_values.size(); ++mi) {
    out << pd.m_values[mi];
    for (std::size_t si = 0; si < pd.snr_values.size(); ++si)
      out << ','
          << fmt(pd.success(static_cast<Index>(mi), static_cast<Index>(si)));
    out << '\n';
  }
}

void write_calibration_csv(const std::string& path,
                           const CalibrationResult& calibration) {
  auto out = open_out(path);
  out << "c0,phantom_rate,chosen\n";
  for (std::size_t i = 0; i < calibration.c0_grid.size(); ++i) {
    const bool chosen = calibration.chosen_c0 &&
                        *calibration.chosen_c0 == calibration.c0_grid[i];
    out << fmt(calibration.c0_grid[i]) << ',' << fmt(calibration.phantom_rate[i])
        << ',' << (chosen ? 1 : 0) << '\n';
  }
}

void write_recovery_json(const std::string& path, const RecoveryResult& result,
                         const std::vector<Index>* true_support) {
  json doc;
  doc["support"] = result.support;
  doc["converged"] = result.converged;
  doc["iterations"] = result.iterations;
  doc["residual_norm"] = result.residual_norm;
  doc["tau"] = result.tau;
  doc["lambda"] = result.lambda;
  doc["dt1"] = result.dt1;
  doc["dt2"] = result.dt2;
  doc["kkt_pass"] = result.kkt.pass;
  if (true_support) doc["true_support"] = *true_support;
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

void write_kkt_json(const std::string& path, const KktReport& report) {
  json doc;
  doc["max_a_dual"] = report.max_a_dual;
  doc["max_c_dual"] = report.max_c_dual;
  doc["support_gap_a"] = report.support_gap_a;
  doc["support_gap_c"] = report.support_gap_c;
  doc["tol"] = report.tol;
  doc["pass"] = report.pass;
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  json doc;
  doc["config_path"] = manifest.config_path;
  doc["command"] = manifest.command;
  doc["master_seed"] = manifest.master_seed;
  doc["tool_version"] = manifest.tool_version;
  doc["started_at"] = manifest.started_at;
  doc["finished_at"] = manifest.finished_at;
  doc["output_paths"] = manifest.output_paths;
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

std::string now_utc_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace nc::io
