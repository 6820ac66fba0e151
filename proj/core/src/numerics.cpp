#include "nc/numerics.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace nc {

namespace {

std::uint64_t splitmix64_step(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// FFTW planning is not thread safe; execution through fftw_execute_dft is.
// Plans are cached per thread and created under a global lock, with
// FFTW_UNALIGNED so they apply to any caller buffer.
fftw_plan plan_for(int n, int sign) {
  thread_local std::map<std::pair<int, int>, fftw_plan> cache;
  const auto key = std::make_pair(n, sign);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  static std::mutex planner_mutex;
  std::lock_guard<std::mutex> lock(planner_mutex);
  // Planned out-of-place on scratch buffers; executions stay out-of-place.
  std::vector<Complex> scratch_in(static_cast<std::size_t>(n));
  std::vector<Complex> scratch_out(static_cast<std::size_t>(n));
  fftw_plan plan = fftw_plan_dft_1d(
      n, reinterpret_cast<fftw_complex*>(scratch_in.data()),
      reinterpret_cast<fftw_complex*>(scratch_out.data()), sign,
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plan == nullptr) throw std::runtime_error("dft: fftw planner failed");
  cache.emplace(key, plan);
  return plan;
}

}  // namespace

Seed derive_seed(Seed master, std::uint64_t i0, std::uint64_t i1,
                 std::uint64_t i2) {
  std::uint64_t h = master.value + 0x9e3779b97f4a7c15ULL;
  h = splitmix64_step(h ^ (i0 + 0xd1b54a32d192ed03ULL));
  h = splitmix64_step(h ^ (i1 + 0x8cb92ba72f3d8dd7ULL));
  h = splitmix64_step(h ^ (i2 + 0x2545f4914f6cdd1dULL));
  return Seed{h};
}

namespace detail {

void dft_raw(const Complex* in, Complex* out, Index n, bool forward) {
  fftw_execute_dft(
      plan_for(static_cast<int>(n), forward ? FFTW_FORWARD : FFTW_BACKWARD),
      const_cast<fftw_complex*>(reinterpret_cast<const fftw_complex*>(in)),
      reinterpret_cast<fftw_complex*>(out));
}

}  // namespace detail

ComplexVector dft(const ComplexVector& v, DftDirection direction) {
  if (v.size() == 0) throw std::invalid_argument("dft: empty input");
  ComplexVector out(v.size());
  detail::dft_raw(v.data(), out.data(), v.size(),
                  direction == DftDirection::forward);
  if (direction == DftDirection::inverse)
    out /= static_cast<double>(v.size());
  return out;
}

LinearOperator dense_operator(const ComplexMatrix& a) {
  LinearOperator op;
  op.rows = a.rows();
  op.cols = a.cols();
  op.apply = [&a](const ComplexVector& x) -> ComplexVector { return a * x; };
  op.apply_adjoint = [&a](const ComplexVector& y) -> ComplexVector {
    return a.adjoint() * y;
  };
  return op;
}

SpectralNormEstimate spectral_norm(const LinearOperator& op, double tol,
                                   int max_iter, Seed seed) {
  if (op.rows < 1 || op.cols < 1)
    throw std::invalid_argument("spectral_norm: operator dimensions must be positive");
  if (!op.apply || !op.apply_adjoint)
    throw std::invalid_argument("spectral_norm: missing operator handle");
  if (tol <= 0.0) throw std::invalid_argument("spectral_norm: tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("spectral_norm: max_iter must be >= 1");

  ComplexVector v = sample_unit_sphere(op.cols, seed);
  double sigma_prev = -1.0;
  for (int it = 1; it <= max_iter; ++it) {
    const ComplexVector w = op.apply(v);
    const double sigma = w.norm();  // ||op v|| with ||v|| = 1
    if (sigma == 0.0) return {0.0, true, it};
    const ComplexVector u = op.apply_adjoint(w);
    const double u_norm = u.norm();
    if (u_norm == 0.0) return {sigma, true, it};
    v = u / u_norm;
    if (sigma_prev >= 0.0 && std::abs(sigma - sigma_prev) <= tol * sigma)
      return {sigma, true, it};
    sigma_prev = sigma;
  }
  return {sigma_prev, false, max_iter};
}

ComplexVector sample_complex_gaussian(Index n, Seed seed) {
  if (n < 1)
    throw std::invalid_argument("sample_complex_gaussian: n must be >= 1");
  std::mt19937_64 rng(seed.value);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  ComplexVector out(n);
  for (Index k = 0; k < n; ++k) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    out[k] = Complex(re, im);
  }
  return out;
}

ComplexVector sample_unit_sphere(Index n, Seed seed) {
  ComplexVector v = sample_complex_gaussian(n, seed);
  const double norm = v.norm();
  return v / norm;
}

}  // namespace nc
