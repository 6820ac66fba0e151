#pragma once

#include "nc/noise_collector.hpp"
#include "nc/types.hpp"

#include <optional>
#include <vector>

namespace nc {

/// Signal weight tau = c0 * sqrt(ln n), where n is the data dimension of
/// the (possibly frequency-stacked) system.
double tau_from(Index n, double c0);

/// Complex soft threshold: shrinks the modulus by level and keeps the
/// phase, with exact zero at or below the threshold. Real inputs reduce
/// to sign(y) * max(0, |y| - level).
Complex soft_threshold(Complex y, double level);

struct SolverConfig {
  /// Weight on the signal block; tau_from(n, c0) when unset. Zero is
  /// accepted and leaves the signal coefficients unpenalized.
  std::optional<double> tau;
  double lambda = 1.0;
  double c0 = 0.8;
  /// Primal step; auto-selected as 2 / (safety * |[A|C]|^2) when unset.
  std::optional<double> dt1;
  /// Dual step; auto-selected as lambda / (safety * |A|) when unset.
  std::optional<double> dt2;
  int max_iter = 200000;
  double tol_residual = 1e-8;  // relative to |b|
  double tol_change = 1e-10;   // l-inf change of the thresholded iterates
  double safety = 1.01;        // spectral-norm inflation in the step rule
  double support_rel_floor = 1e-6;
};

/// Iterates of the primal-dual loop.
struct SolverState {
  ComplexVector rho;
  ComplexVector eta;
  ComplexVector z;
  int iter = 0;
  double residual_norm = 0.0;
};

struct KktReport {
  double max_a_dual = 0.0;     // max_j |<a_j, z>|, bounded by lambda*tau
  double max_c_dual = 0.0;     // max_j |<c_j, z>|, bounded by lambda
  double support_gap_a = 0.0;  // max over supp(rho) of |<a_j,z> - lambda*tau*phase(rho_j)|
  double support_gap_c = 0.0;  // max over supp(eta) of |<c_j,z> - lambda*phase(eta_j)|
  double tol = 0.0;
  bool pass = false;
};

struct RecoveryResult {
  ComplexVector rho_tau;
  ComplexVector eta_tau;
  ComplexVector z;
  std::vector<Index> support;
  std::optional<ComplexVector> debiased;  // zero off support when present
  bool converged = false;
  int iterations = 0;
  double residual_norm = 0.0;  // of the returned iterates
  // Effective parameters of the run.
  double tau = 0.0;
  double lambda = 0.0;
  double dt1 = 0.0;
  double dt2 = 0.0;
  std::vector<double> residual_history;
  KktReport kkt;
};

/// Minimizes tau*|rho|_1 + |eta|_1 subject to A rho + C eta = b by the
/// iteration
///   r       = b - A rho_k - C eta_k
///   rho_k+1 = S_{tau lambda dt1}(rho_k + dt1 A^*(z_k + r))
///   eta_k+1 = S_{lambda dt1}    (eta_k + dt1 C^*(z_k + r))
///   z_k+1   = z_k + dt2 r
/// from zero initial state, until the relative residual and the l-inf
/// iterate change both drop below tolerance or max_iter is hit. The
/// minimizer does not depend on lambda; lambda only scales the dual
/// variable and the step geometry.
///
/// a must be column-normalized. With nc == nullptr the eta/C terms vanish
/// and this is the plain l1 solver. Non-convergence is reported through
/// converged = false, never as an exception.
RecoveryResult solve(const ComplexMatrix& a, const NoiseCollector* nc,
                     const ComplexVector& b, const SolverConfig& config = {});

/// Indices with |rho_k| above rel_floor times the peak modulus; the floor
/// only prunes accumulated float drift since the thresholding produces
/// exact zeros.
std::vector<Index> extract_support(const ComplexVector& rho,
                                   double rel_floor = 1e-6);

/// Least-squares amplitudes restricted to the support, embedded in a
/// vector of length a.cols() that is zero elsewhere. Throws when the
/// restricted columns are linearly dependent, naming them.
ComplexVector debias_l2(const ComplexMatrix& a, const ComplexVector& b,
                        const std::vector<Index>& support);

/// First-order optimality certificate of a solve() result: dual bounds
/// |<a_j,z>| <= lambda*tau and |<c_j,z>| <= lambda, plus phase alignment
/// on both supports, all within the relative tol.
KktReport kkt_check(const ComplexMatrix& a, const NoiseCollector* nc,
                    const ComplexVector& b, const RecoveryResult& result,
                    double tol = 1e-3);

}  // namespace nc
