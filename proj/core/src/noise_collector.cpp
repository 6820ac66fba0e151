#include "nc/noise_collector.hpp"

#include "nc/numerics.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace nc {

namespace {

constexpr double kUnitNormTol = 1e-12;

std::invalid_argument length_error_for(const char* what, Index got,
                                       Index want) {
  std::ostringstream msg;
  msg << what << ": length " << got << ", expected " << want;
  return std::invalid_argument(msg.str());
}

}  // namespace

void NoiseCollector::compute_spectra() {
  spectra_.clear();
  spectra_.reserve(generators_.size());
  for (const auto& g : generators_)
    spectra_.push_back(dft(g, DftDirection::forward));
}

NoiseCollector NoiseCollector::build_with_blocks(Index n, Index num_blocks,
                                                 Seed seed) {
  if (n < 2)
    throw std::invalid_argument("NoiseCollector: n must be >= 2");
  if (num_blocks < 1)
    throw std::invalid_argument("NoiseCollector: need at least one block");
  NoiseCollector nc;
  nc.n_ = n;
  nc.seed_ = seed;
  nc.generators_.reserve(static_cast<std::size_t>(num_blocks));
  for (Index i = 0; i < num_blocks; ++i)
    nc.generators_.push_back(
        sample_unit_sphere(n, derive_seed(seed, static_cast<std::uint64_t>(i))));
  nc.beta_ = std::log(static_cast<double>(n * num_blocks)) /
             std::log(static_cast<double>(n));
  nc.compute_spectra();
  return nc;
}

NoiseCollector NoiseCollector::build(Index n, double beta, Seed seed) {
  if (beta <= 1.0)
    throw std::invalid_argument(
        "NoiseCollector: beta must exceed 1 (the column count must exceed n)");
  if (n < 2)
    throw std::invalid_argument("NoiseCollector: n must be >= 2");
  // Guard ceil against pow landing a hair above an exact integer.
  const double raw = std::pow(static_cast<double>(n), beta - 1.0);
  const Index blocks = static_cast<Index>(std::ceil(raw - 1e-9));
  return build_with_blocks(n, blocks, seed);
}

NoiseCollector NoiseCollector::build_with_sigma(Index n, Index sigma,
                                                Seed seed) {
  if (sigma < 1)
    throw std::invalid_argument("NoiseCollector: sigma must be >= 1");
  if (n < 2)
    throw std::invalid_argument("NoiseCollector: n must be >= 2");
  const Index blocks = (sigma + n - 1) / n;
  return build_with_blocks(n, blocks, seed);
}

NoiseCollector NoiseCollector::from_generators(
    std::vector<ComplexVector> generators) {
  if (generators.empty())
    throw std::invalid_argument("NoiseCollector: need at least one generator");
  const Index n = generators.front().size();
  if (n < 2)
    throw std::invalid_argument("NoiseCollector: n must be >= 2");
  for (const auto& g : generators) {
    if (g.size() != n)
      throw std::invalid_argument("NoiseCollector: generators differ in length");
    if (std::abs(g.norm() - 1.0) > kUnitNormTol)
      throw std::invalid_argument("NoiseCollector: generator is not unit norm");
  }
  NoiseCollector nc;
  nc.n_ = n;
  nc.generators_ = std::move(generators);
  nc.beta_ = std::log(static_cast<double>(nc.num_columns())) /
             std::log(static_cast<double>(n));
  nc.compute_spectra();
  return nc;
}

ComplexVector NoiseCollector::matvec(const ComplexVector& eta) const {
  if (eta.size() != num_columns())
    throw length_error_for("NoiseCollector::matvec", eta.size(), num_columns());
  ComplexVector freq_acc = ComplexVector::Zero(n_);
  ComplexVector slice_hat(n_);
  for (Index i = 0; i < num_blocks(); ++i) {
    detail::dft_raw(eta.data() + i * n_, slice_hat.data(), n_, true);
    freq_acc.array() +=
        spectra_[static_cast<std::size_t>(i)].array() * slice_hat.array();
  }
  ComplexVector out(n_);
  detail::dft_raw(freq_acc.data(), out.data(), n_, false);
  out /= static_cast<double>(n_);
  return out;
}

ComplexVector NoiseCollector::adjoint_matvec(const ComplexVector& v) const {
  if (v.size() != n_)
    throw length_error_for("NoiseCollector::adjoint_matvec", v.size(), n_);
  ComplexVector v_hat(n_);
  detail::dft_raw(v.data(), v_hat.data(), n_, true);
  ComplexVector out(num_columns());
  ComplexVector block_hat(n_);
  const double scale = 1.0 / static_cast<double>(n_);
  for (Index i = 0; i < num_blocks(); ++i) {
    block_hat.array() =
        spectra_[static_cast<std::size_t>(i)].array().conjugate() *
        v_hat.array();
    detail::dft_raw(block_hat.data(), out.data() + i * n_, n_, false);
  }
  out *= scale;
  return out;
}

void NoiseCollector::column_into(Index j, ComplexVector& out) const {
  if (j < 0 || j >= num_columns())
    throw std::invalid_argument("NoiseCollector::column: index out of range");
  const Index block = j / n_;
  const Index shift = j % n_;
  const ComplexVector& g = generators_[static_cast<std::size_t>(block)];
  out.resize(n_);
  out.segment(shift, n_ - shift) = g.head(n_ - shift);
  out.head(shift) = g.tail(shift);
}

ComplexVector NoiseCollector::column(Index j) const {
  ComplexVector out(n_);
  column_into(j, out);
  return out;
}

ComplexMatrix NoiseCollector::materialize_dense(Index max_entries) const {
  const Index entries = n_ * num_columns();
  if (entries > max_entries) {
    std::ostringstream msg;
    msg << "NoiseCollector::materialize_dense: " << entries
        << " entries exceed the guard of " << max_entries;
    throw std::length_error(msg.str());
  }
  ComplexMatrix dense(n_, num_columns());
  ComplexVector col(n_);
  for (Index j = 0; j < num_columns(); ++j) {
    column_into(j, col);
    dense.col(j) = col;
  }
  return dense;
}

void NoiseCollector::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("NoiseCollector::save: cannot open " + path);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", beta_);
  out << n_ << ',' << num_blocks() << ',' << seed_.value << ',' << buf << '\n';
  for (const auto& g : generators_) {
    for (Index k = 0; k < n_; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", g[k].real(), g[k].imag());
      out << (k == 0 ? "" : ",") << buf;
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("NoiseCollector::save: write failed");
}

NoiseCollector NoiseCollector::load(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("NoiseCollector::load: cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("NoiseCollector::load: missing header");
  long long n = 0, blocks = 0;
  unsigned long long seed_value = 0;
  double beta = 0.0;
  if (std::sscanf(line.c_str(), "%lld,%lld,%llu,%lf", &n, &blocks, &seed_value,
                  &beta) != 4)
    throw std::runtime_error("NoiseCollector::load: malformed header");
  if (n < 2 || blocks < 1)
    throw std::runtime_error("NoiseCollector::load: bad dimensions in header");

  NoiseCollector nc;
  nc.n_ = static_cast<Index>(n);
  nc.seed_ = Seed{seed_value};
  nc.beta_ = beta;
  nc.generators_.reserve(static_cast<std::size_t>(blocks));
  for (long long i = 0; i < blocks; ++i) {
    if (!std::getline(in, line))
      throw std::runtime_error("NoiseCollector::load: missing generator row");
    ComplexVector g(nc.n_);
    const char* cursor = line.c_str();
    for (Index k = 0; k < nc.n_; ++k) {
      char* end = nullptr;
      const double re = std::strtod(cursor, &end);
      if (end == cursor || *end != ',')
        throw std::runtime_error("NoiseCollector::load: malformed row");
      cursor = end + 1;
      const double im = std::strtod(cursor, &end);
      if (end == cursor)
        throw std::runtime_error("NoiseCollector::load: malformed row");
      cursor = (*end == ',') ? end + 1 : end;
      g[k] = Complex(re, im);
    }
    nc.generators_.push_back(std::move(g));
  }
  nc.compute_spectra();
  return nc;
}

CoherenceReport coherence_audit(const NoiseCollector& nc,
                                const ComplexMatrix& a, double c0,
                                Index num_samples, Seed seed) {
  if (a.rows() != nc.n())
    throw std::invalid_argument("coherence_audit: row count differs from n");
  if (num_samples < 1)
    throw std::invalid_argument("coherence_audit: num_samples must be >= 1");
  if (c0 <= 0.0)
    throw std::invalid_argument("coherence_audit: c0 must be positive");
  for (Index k = 0; k < a.cols(); ++k)
    if (std::abs(a.col(k).norm() - 1.0) > 1e-12)
      throw std::invalid_argument(
          "coherence_audit: measurement matrix is not column-normalized");

  std::mt19937_64 rng(seed.value);
  std::uniform_int_distribution<Index> pick_a(0, a.cols() - 1);
  std::uniform_int_distribution<Index> pick_c(0, nc.num_columns() - 1);

  CoherenceReport report;
  ComplexVector col(nc.n()), other(nc.n());
  for (Index s = 0; s < num_samples; ++s) {
    const Index i = pick_a(rng);
    const Index j = pick_c(rng);
    nc.column_into(j, col);
    report.max_ac = std::max(report.max_ac, std::abs(a.col(i).dot(col)));
  }
  for (Index s = 0; s < num_samples; ++s) {
    const Index i = pick_c(rng);
    Index j = pick_c(rng);
    while (j == i) j = pick_c(rng);
    nc.column_into(i, col);
    nc.column_into(j, other);
    report.max_cc = std::max(report.max_cc, std::abs(col.dot(other)));
  }
  const double n_real = static_cast<double>(nc.n());
  report.threshold = c0 * std::sqrt(std::log(n_real) / n_real);
  report.num_pairs_sampled = 2 * num_samples;
  report.pass =
      report.max_ac <= report.threshold && report.max_cc <= report.threshold;
  return report;
}

}  // namespace nc
