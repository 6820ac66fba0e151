#include "oracles.hpp"

#include <nc/numerics.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace nc::oracles {

ComplexVector naive_dft(const ComplexVector& v, bool forward) {
  const Index n = v.size();
  const double sign = forward ? -1.0 : 1.0;
  ComplexVector out = ComplexVector::Zero(n);
  for (Index m = 0; m < n; ++m) {
    Complex acc(0.0, 0.0);
    for (Index k = 0; k < n; ++k) {
      const double angle = sign * 2.0 * std::numbers::pi *
                           static_cast<double>(k) * static_cast<double>(m) /
                           static_cast<double>(n);
      acc += v[k] * Complex(std::cos(angle), std::sin(angle));
    }
    out[m] = forward ? acc : acc / static_cast<double>(n);
  }
  return out;
}

ComplexMatrix dense_circulant(const ComplexVector& generator) {
  const Index n = generator.size();
  ComplexMatrix c(n, n);
  for (Index col = 0; col < n; ++col)
    for (Index row = 0; row < n; ++row)
      c(row, col) = generator[((row - col) % n + n) % n];
  return c;
}

double mutual_coherence(const ComplexMatrix& a) {
  double mu = 0.0;
  for (Index i = 0; i < a.cols(); ++i)
    for (Index j = i + 1; j < a.cols(); ++j)
      mu = std::max(mu, std::abs(a.col(i).dot(a.col(j))));
  return mu;
}

ComplexMatrix random_unit_columns(Index rows, Index cols, Seed seed) {
  ComplexMatrix a(rows, cols);
  for (Index j = 0; j < cols; ++j)
    a.col(j) = sample_unit_sphere(
        rows, derive_seed(seed, static_cast<std::uint64_t>(j)));
  return a;
}

std::pair<Index, Complex> best_one_sparse_fit(const ComplexMatrix& a,
                                              const ComplexVector& b) {
  Index best_k = 0;
  Complex best_alpha(0.0, 0.0);
  double best_residual = std::numeric_limits<double>::infinity();
  for (Index k = 0; k < a.cols(); ++k) {
    // alpha = <a_k, b> / |a_k|^2
    const Complex alpha = a.col(k).dot(b) / a.col(k).squaredNorm();
    const double residual = (a.col(k) * alpha - b).norm();
    if (residual < best_residual) {
      best_residual = residual;
      best_k = k;
      best_alpha = alpha;
    }
  }
  return {best_k, best_alpha};
}

}  // namespace nc::oracles
