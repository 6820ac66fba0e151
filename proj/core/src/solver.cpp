#include "nc/solver.hpp"

#include "nc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nc {

namespace {

constexpr double kColumnNormTol = 1e-12;

void require_column_normalized(const ComplexMatrix& a, const char* where) {
  for (Index k = 0; k < a.cols(); ++k) {
    if (std::abs(a.col(k).norm() - 1.0) > kColumnNormTol) {
      std::ostringstream msg;
      msg << where << ": column " << k << " is not unit norm";
      throw std::invalid_argument(msg.str());
    }
  }
}

LinearOperator stacked_operator(const ComplexMatrix& a,
                                const NoiseCollector* nc) {
  LinearOperator op;
  op.rows = a.rows();
  op.cols = a.cols() + (nc ? nc->num_columns() : 0);
  op.apply = [&a, nc](const ComplexVector& x) -> ComplexVector {
    ComplexVector out = a * x.head(a.cols());
    if (nc) out += nc->matvec(x.tail(nc->num_columns()));
    return out;
  };
  op.apply_adjoint = [&a, nc](const ComplexVector& y) -> ComplexVector {
    ComplexVector out(a.cols() + (nc ? nc->num_columns() : 0));
    out.head(a.cols()).noalias() = a.adjoint() * y;
    if (nc) out.tail(nc->num_columns()) = nc->adjoint_matvec(y);
    return out;
  };
  return op;
}

Complex phase_of(Complex v) { return v / std::abs(v); }

}  // namespace

double tau_from(Index n, double c0) {
  if (n < 2)
    throw std::invalid_argument("tau_from: n must be >= 2 (ln n must be positive)");
  if (c0 <= 0.0) throw std::invalid_argument("tau_from: c0 must be positive");
  return c0 * std::sqrt(std::log(static_cast<double>(n)));
}

Complex soft_threshold(Complex y, double level) {
  if (level < 0.0)
    throw std::invalid_argument("soft_threshold: negative level");
  const double mag = std::abs(y);
  if (mag <= level) return Complex(0.0, 0.0);
  return y * ((mag - level) / mag);
}

RecoveryResult solve(const ComplexMatrix& a, const NoiseCollector* nc,
                     const ComplexVector& b, const SolverConfig& config) {
  const Index n = a.rows();
  const Index num_cols = a.cols();
  const Index sigma = nc ? nc->num_columns() : 0;

  if (b.size() != n)
    throw std::invalid_argument("solve: data length differs from matrix rows");
  if (nc && nc->n() != n)
    throw std::invalid_argument("solve: collector dimension differs from matrix rows");
  if (!b.allFinite())
    throw std::invalid_argument("solve: data contains NaN or Inf");
  if (config.lambda <= 0.0)
    throw std::invalid_argument("solve: lambda must be positive");
  if (config.safety <= 1.0)
    throw std::invalid_argument("solve: safety must exceed 1");
  if (config.max_iter < 1)
    throw std::invalid_argument("solve: max_iter must be >= 1");
  require_column_normalized(a, "solve");

  const double lambda = config.lambda;
  const double tau = config.tau ? *config.tau : tau_from(n, config.c0);
  if (tau < 0.0) throw std::invalid_argument("solve: tau must be nonnegative");

  double dt1 = 0.0, dt2 = 0.0;
  if (config.dt1 && config.dt2) {
    dt1 = *config.dt1;
    dt2 = *config.dt2;
  } else {
    const double sigma_a = spectral_norm(dense_operator(a)).value;
    const double sigma_ac =
        nc ? spectral_norm(stacked_operator(a, nc)).value : sigma_a;
    dt1 = config.dt1 ? *config.dt1
                     : 2.0 / (config.safety * sigma_ac * sigma_ac);
    dt2 = config.dt2 ? *config.dt2 : lambda / (config.safety * sigma_a);
  }
  if (dt1 <= 0.0 || dt2 <= 0.0)
    throw std::invalid_argument("solve: step sizes must be positive");

  SolverState state;
  state.rho = ComplexVector::Zero(num_cols);
  state.eta = ComplexVector::Zero(sigma);
  state.z = ComplexVector::Zero(n);

  ComplexVector residual(n), dual_plus_residual(n);
  ComplexVector grad_rho(num_cols), grad_eta(sigma);
  std::vector<Index> rho_support;
  rho_support.reserve(static_cast<std::size_t>(num_cols));
  bool eta_nonzero = false;

  const double b_norm = b.norm();
  const double level_rho = tau * lambda * dt1;
  const double level_eta = lambda * dt1;

  RecoveryResult result;
  result.residual_history.reserve(
      static_cast<std::size_t>(std::min(config.max_iter, 1 << 20)));

  bool converged = false;
  int iter = 0;
  while (iter < config.max_iter) {
    ++iter;

    // r = b - A rho - C eta; A rho accumulated over the current support.
    residual = b;
    for (const Index k : rho_support) residual -= a.col(k) * state.rho[k];
    if (eta_nonzero) residual -= nc->matvec(state.eta);
    const double residual_norm = residual.norm();
    result.residual_history.push_back(residual_norm);

    dual_plus_residual = state.z + residual;

    double change = 0.0;

    grad_rho.noalias() = a.adjoint() * dual_plus_residual;
    rho_support.clear();
    for (Index k = 0; k < num_cols; ++k) {
      const Complex next =
          soft_threshold(state.rho[k] + dt1 * grad_rho[k], level_rho);
      change = std::max(change, std::abs(next - state.rho[k]));
      state.rho[k] = next;
      if (next != Complex(0.0, 0.0)) rho_support.push_back(k);
    }

    if (nc) {
      grad_eta = nc->adjoint_matvec(dual_plus_residual);
      eta_nonzero = false;
      for (Index k = 0; k < sigma; ++k) {
        const Complex next =
            soft_threshold(state.eta[k] + dt1 * grad_eta[k], level_eta);
        change = std::max(change, std::abs(next - state.eta[k]));
        state.eta[k] = next;
        if (next != Complex(0.0, 0.0)) eta_nonzero = true;
      }
    }

    state.z += dt2 * residual;

    if (residual_norm <= config.tol_residual * b_norm &&
        change <= config.tol_change) {
      converged = true;
      break;
    }
  }
  state.iter = iter;

  // Residual of the returned iterates (the loop's residual lags one update).
  residual = b;
  for (const Index k : rho_support) residual -= a.col(k) * state.rho[k];
  if (eta_nonzero) residual -= nc->matvec(state.eta);
  state.residual_norm = residual.norm();

  result.rho_tau = std::move(state.rho);
  result.eta_tau = std::move(state.eta);
  result.z = std::move(state.z);
  result.converged = converged;
  result.iterations = iter;
  result.residual_norm = state.residual_norm;
  result.tau = tau;
  result.lambda = lambda;
  result.dt1 = dt1;
  result.dt2 = dt2;
  result.support = extract_support(result.rho_tau, config.support_rel_floor);
  result.kkt = kkt_check(a, nc, b, result);
  return result;
}

std::vector<Index> extract_support(const ComplexVector& rho, double rel_floor) {
  if (rel_floor < 0.0 || rel_floor >= 1.0)
    throw std::invalid_argument("extract_support: rel_floor must be in [0, 1)");
  std::vector<Index> support;
  if (rho.size() == 0) return support;
  const double peak = rho.cwiseAbs().maxCoeff();
  if (peak == 0.0) return support;
  const double floor = rel_floor * peak;
  for (Index k = 0; k < rho.size(); ++k)
    if (std::abs(rho[k]) > floor) support.push_back(k);
  return support;
}

ComplexVector debias_l2(const ComplexMatrix& a, const ComplexVector& b,
                        const std::vector<Index>& support) {
  if (b.size() != a.rows())
    throw std::invalid_argument("debias_l2: data length differs from matrix rows");
  ComplexVector out = ComplexVector::Zero(a.cols());
  if (support.empty()) return out;
  if (static_cast<Index>(support.size()) > a.rows())
    throw std::invalid_argument(
        "debias_l2: support exceeds the number of equations");
  for (const Index k : support)
    if (k < 0 || k >= a.cols())
      throw std::invalid_argument("debias_l2: support index out of range");

  ComplexMatrix restricted(a.rows(), static_cast<Index>(support.size()));
  for (Index j = 0; j < restricted.cols(); ++j)
    restricted.col(j) = a.col(support[static_cast<std::size_t>(j)]);

  Eigen::ColPivHouseholderQR<ComplexMatrix> qr(restricted);
  if (qr.rank() < restricted.cols()) {
    const auto& perm = qr.colsPermutation().indices();
    std::ostringstream msg;
    msg << "debias_l2: linearly dependent columns on support:";
    for (Index j = qr.rank(); j < restricted.cols(); ++j)
      msg << ' ' << support[static_cast<std::size_t>(perm[j])];
    throw std::runtime_error(msg.str());
  }

  const ComplexVector amplitudes = qr.solve(b);
  for (Index j = 0; j < restricted.cols(); ++j)
    out[support[static_cast<std::size_t>(j)]] = amplitudes[j];
  return out;
}

KktReport kkt_check(const ComplexMatrix& a, const NoiseCollector* nc,
                    const ComplexVector& b, const RecoveryResult& result,
                    double tol) {
  if (b.size() != a.rows())
    throw std::invalid_argument("kkt_check: data length differs from matrix rows");
  if (result.z.size() != a.rows())
    throw std::invalid_argument("kkt_check: dual length differs from matrix rows");

  const double lambda = result.lambda;
  const double tau = result.tau;

  KktReport report;
  report.tol = tol;

  const ComplexVector a_dual = a.adjoint() * result.z;
  report.max_a_dual = a_dual.size() ? a_dual.cwiseAbs().maxCoeff() : 0.0;
  for (Index k = 0; k < result.rho_tau.size(); ++k) {
    if (result.rho_tau[k] == Complex(0.0, 0.0)) continue;
    const double gap =
        std::abs(a_dual[k] - lambda * tau * phase_of(result.rho_tau[k]));
    report.support_gap_a = std::max(report.support_gap_a, gap);
  }

  if (nc) {
    const ComplexVector c_dual = nc->adjoint_matvec(result.z);
    report.max_c_dual = c_dual.cwiseAbs().maxCoeff();
    for (Index k = 0; k < result.eta_tau.size(); ++k) {
      if (result.eta_tau[k] == Complex(0.0, 0.0)) continue;
      const double gap =
          std::abs(c_dual[k] - lambda * phase_of(result.eta_tau[k]));
      report.support_gap_c = std::max(report.support_gap_c, gap);
    }
  }

  report.pass = report.max_a_dual <= lambda * tau * (1.0 + tol) &&
                report.max_c_dual <= lambda * (1.0 + tol) &&
                report.support_gap_a <= tol * lambda * tau &&
                report.support_gap_c <= tol * lambda;
  return report;
}

}  // namespace nc
