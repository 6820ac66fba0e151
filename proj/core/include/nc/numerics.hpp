#pragma once

#include "nc/types.hpp"

#include <functional>

namespace nc {

enum class DftDirection { forward, inverse };

/// Discrete Fourier transform for any positive length n (block sizes are
/// data dimensions such as 625, not powers of two).
///
/// forward:  X_m = sum_k v_k exp(-2*pi*i*k*m/n), no scaling
/// inverse:  conjugate kernel with a 1/n factor, so inverse(forward(v)) == v
ComplexVector dft(const ComplexVector& v, DftDirection direction);

namespace detail {
/// Unscaled transform between raw buffers of length n. The inverse
/// direction does not divide by n; callers fold the factor into their
/// own scaling. in and out must not alias.
void dft_raw(const Complex* in, Complex* out, Index n, bool forward);
}  // namespace detail

/// Matrix-free linear operator. apply maps C^cols -> C^rows and
/// apply_adjoint maps C^rows -> C^cols; the pair must satisfy
/// <apply(x), y> == <x, apply_adjoint(y)>.
struct LinearOperator {
  Index rows = 0;
  Index cols = 0;
  std::function<ComplexVector(const ComplexVector&)> apply;
  std::function<ComplexVector(const ComplexVector&)> apply_adjoint;
};

LinearOperator dense_operator(const ComplexMatrix& a);

struct SpectralNormEstimate {
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Largest singular value via power iteration on the normal operator,
/// started from a seeded random vector. Stops when the Rayleigh estimate
/// changes by less than tol relatively; on hitting max_iter the best
/// estimate is returned with converged = false.
SpectralNormEstimate spectral_norm(const LinearOperator& op, double tol = 1e-4,
                                   int max_iter = 500,
                                   Seed seed = Seed{0x9c0ffee1u});

/// n i.i.d. circularly symmetric complex Gaussian entries: independent
/// real and imaginary parts of variance 1/2, so E|z_k|^2 = 1.
ComplexVector sample_complex_gaussian(Index n, Seed seed);

/// Uniform draw from the complex unit sphere (Gaussian sample normalized
/// to unit l2 norm).
ComplexVector sample_unit_sphere(Index n, Seed seed);

}  // namespace nc
