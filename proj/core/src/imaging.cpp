#include "nc/imaging.hpp"

#include "nc/numerics.hpp"
#include "nc/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace nc {

namespace {

double linspace_at(double center, double extent, Index count, Index i) {
  if (count == 1) return center;
  return center - extent / 2.0 +
         static_cast<double>(i) * extent / static_cast<double>(count - 1);
}

[[noreturn]] void bad_field(const char* field, const char* why) {
  std::ostringstream msg;
  msg << "ImagingConfig: field '" << field << "' " << why;
  throw std::invalid_argument(msg.str());
}

}  // namespace

double ImagingConfig::receiver_position(Index r) const {
  return linspace_at(0.0, aperture, num_receivers, r);
}

std::pair<double, double> ImagingConfig::grid_position(Index k) const {
  const Index cross_index = k % pixels_cross;
  const Index range_index = k / pixels_cross;
  return {linspace_at(0.0, window_width, pixels_cross, cross_index),
          linspace_at(range, window_depth, pixels_range, range_index)};
}

double ImagingConfig::frequency(Index l) const {
  return linspace_at(central_frequency, bandwidth, num_frequencies, l);
}

void validate(const ImagingConfig& config) {
  if (config.num_receivers < 1) bad_field("num_receivers", "must be >= 1");
  if (config.aperture <= 0.0) bad_field("aperture", "must be positive");
  if (config.range <= 0.0) bad_field("range", "must be positive");
  if (config.central_frequency <= 0.0)
    bad_field("central_frequency", "must be positive");
  if (config.bandwidth < 0.0) bad_field("bandwidth", "must be nonnegative");
  if (config.num_frequencies < 1) bad_field("num_frequencies", "must be >= 1");
  if (config.num_frequencies > 1 && config.bandwidth == 0.0)
    bad_field("bandwidth", "must be positive for more than one frequency");
  if (config.central_frequency - config.bandwidth / 2.0 <= 0.0)
    bad_field("bandwidth", "puts the lowest frequency at or below zero");
  if (config.wave_speed <= 0.0) bad_field("wave_speed", "must be positive");
  if (config.window_width <= 0.0) bad_field("window_width", "must be positive");
  if (config.window_depth <= 0.0) bad_field("window_depth", "must be positive");
  if (config.pixels_cross < 1) bad_field("pixels_cross", "must be >= 1");
  if (config.pixels_range < 1) bad_field("pixels_range", "must be >= 1");
}

ComplexVector scene_vector(const SourceScene& scene, Index k) {
  ComplexVector rho = ComplexVector::Zero(k);
  for (Index j = 0; j < scene.sparsity(); ++j) {
    const Index pos = scene.positions[static_cast<std::size_t>(j)];
    if (pos < 0 || pos >= k)
      throw std::invalid_argument("scene_vector: position out of range");
    rho[pos] = scene.amplitudes[j];
  }
  return rho;
}

ComplexVector green_vector(const ImagingConfig& config, Index grid_point,
                           Index freq_index) {
  validate(config);
  if (grid_point < 0 || grid_point >= config.grid_size())
    throw std::invalid_argument("green_vector: grid index out of range");
  if (freq_index < 0 || freq_index >= config.num_frequencies)
    throw std::invalid_argument("green_vector: frequency index out of range");

  const auto [cross, depth] = config.grid_position(grid_point);
  const double omega =
      2.0 * std::numbers::pi * config.frequency(freq_index);
  ComplexVector g(config.num_receivers);
  for (Index r = 0; r < config.num_receivers; ++r) {
    const double dx = config.receiver_position(r) - cross;
    const double dist = std::hypot(dx, depth);
    if (dist <= 0.0)
      throw std::domain_error(
          "green_vector: receiver coincides with the grid point");
    const double phase = omega * dist / config.wave_speed;
    g[r] = std::polar(1.0 / (4.0 * std::numbers::pi * dist), phase);
  }
  return g;
}

ComplexMatrix build_measurement_matrix(const ImagingConfig& config) {
  validate(config);
  const Index n = config.data_dimension();
  const Index num_receivers = config.num_receivers;
  const Index num_freq = config.num_frequencies;
  ComplexMatrix a(n, config.grid_size());
  parallel_for(static_cast<std::size_t>(config.grid_size()), [&](std::size_t k) {
    const Index col = static_cast<Index>(k);
    for (Index l = 0; l < num_freq; ++l)
      a.col(col).segment(l * num_receivers, num_receivers) =
          green_vector(config, col, l);
    a.col(col).normalize();
  });
  return a;
}

ComplexVector synthesize_data(const ComplexMatrix& a,
                              const SourceScene& scene) {
  ComplexVector b0 = ComplexVector::Zero(a.rows());
  for (Index j = 0; j < scene.sparsity(); ++j) {
    const Index pos = scene.positions[static_cast<std::size_t>(j)];
    if (pos < 0 || pos >= a.cols())
      throw std::invalid_argument("synthesize_data: position out of range");
    b0 += scene.amplitudes[j] * a.col(pos);
  }
  return b0;
}

NoisyData add_noise(const ComplexVector& b0, double snr, Seed seed) {
  if (std::isinf(snr) && snr > 0.0)
    return {b0, ComplexVector::Zero(b0.size())};
  if (!(snr > 0.0))
    throw std::invalid_argument("add_noise: snr must be positive");
  const double b0_norm = b0.norm();
  if (b0_norm == 0.0)
    throw std::invalid_argument(
        "add_noise: zero data; draw pure noise directly instead");
  ComplexVector e = sample_unit_sphere(b0.size(), seed) * (b0_norm / snr);
  return {b0 + e, std::move(e)};
}

SourceScene random_scene(const ImagingConfig& config, Index m,
                         std::pair<double, double> amp_range, Seed seed) {
  validate(config);
  const Index k = config.grid_size();
  if (m < 0 || m > k)
    throw std::invalid_argument("random_scene: sparsity exceeds the grid size");
  if (!(amp_range.first > 0.0) || amp_range.second < amp_range.first)
    throw std::invalid_argument("random_scene: bad amplitude range");

  std::mt19937_64 rng(seed.value);

  // Partial Fisher-Yates draw of m distinct grid indices.
  std::vector<Index> pool(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) pool[static_cast<std::size_t>(i)] = i;
  for (Index i = 0; i < m; ++i) {
    std::uniform_int_distribution<Index> pick(i, k - 1);
    std::swap(pool[static_cast<std::size_t>(i)],
              pool[static_cast<std::size_t>(pick(rng))]);
  }

  SourceScene scene;
  scene.positions.assign(pool.begin(), pool.begin() + m);
  std::sort(scene.positions.begin(), scene.positions.end());
  scene.amplitudes.resize(m);
  std::uniform_real_distribution<double> magnitude(amp_range.first,
                                                   amp_range.second);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (Index j = 0; j < m; ++j) {
    const double mag = magnitude(rng);
    const double phi = angle(rng);
    scene.amplitudes[j] = std::polar(mag, phi);
  }
  return scene;
}

}  // namespace nc
