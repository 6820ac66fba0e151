#include "nc/experiments.hpp"

#include "nc/numerics.hpp"
#include "nc/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace nc {

namespace {

// Stream tags for derive_seed, so the collector, scenes and noise draws
// never share a stream.
constexpr std::uint64_t kCollectorStream = 0xC0;
constexpr std::uint64_t kNoiseStream = 0xE0;
constexpr std::uint64_t kSceneStream = 0x50;

struct StepSizes {
  double dt1 = 0.0;
  double dt2 = 0.0;
};

// One spectral-norm estimation shared by every solve of an experiment.
StepSizes select_steps(const ComplexMatrix& a, const NoiseCollector* nc,
                       const SolverConfig& solver) {
  LinearOperator a_op = dense_operator(a);
  const double sigma_a = spectral_norm(a_op).value;
  double sigma_ac = sigma_a;
  if (nc) {
    LinearOperator op;
    op.rows = a.rows();
    op.cols = a.cols() + nc->num_columns();
    op.apply = [&a, nc](const ComplexVector& x) -> ComplexVector {
      return a * x.head(a.cols()) + nc->matvec(x.tail(nc->num_columns()));
    };
    op.apply_adjoint = [&a, nc](const ComplexVector& y) -> ComplexVector {
      ComplexVector out(a.cols() + nc->num_columns());
      out.head(a.cols()).noalias() = a.adjoint() * y;
      out.tail(nc->num_columns()) = nc->adjoint_matvec(y);
      return out;
    };
    sigma_ac = spectral_norm(op).value;
  }
  return {2.0 / (solver.safety * sigma_ac * sigma_ac),
          solver.lambda / (solver.safety * sigma_a)};
}

}  // namespace

NoiseCollector build_collector_for(Index n, const ExperimentOptions& options,
                                   Seed seed) {
  if (options.sigma) return NoiseCollector::build_with_sigma(n, *options.sigma, seed);
  return NoiseCollector::build(n, options.beta, seed);
}

CalibrationResult calibrate_c0(const ImagingConfig& config,
                               const NoiseCollector& nc,
                               const std::vector<double>& c0_grid, int trials,
                               Seed seed, const ExperimentOptions& options) {
  validate(config);
  if (c0_grid.empty())
    throw std::invalid_argument("calibrate_c0: empty grid");
  if (!std::is_sorted(c0_grid.begin(), c0_grid.end()))
    throw std::invalid_argument("calibrate_c0: grid must be sorted ascending");
  if (c0_grid.front() < 0.0)
    throw std::invalid_argument("calibrate_c0: c0 values must be nonnegative");
  if (trials < 1)
    throw std::invalid_argument("calibrate_c0: trials must be >= 1");
  const Index n = config.data_dimension();
  if (nc.n() != n)
    throw std::invalid_argument("calibrate_c0: collector dimension mismatch");

  const ComplexMatrix a = build_measurement_matrix(config);
  const StepSizes steps = select_steps(a, &nc, options.solver);
  const double log_n = std::log(static_cast<double>(n));

  const std::size_t num_cells = c0_grid.size() * static_cast<std::size_t>(trials);
  std::vector<unsigned char> phantom(num_cells, 0);
  parallel_for(num_cells, [&](std::size_t flat) {
    const std::size_t gi = flat / static_cast<std::size_t>(trials);
    const std::size_t ti = flat % static_cast<std::size_t>(trials);
    const ComplexVector noise =
        sample_unit_sphere(n, derive_seed(seed, kNoiseStream, gi, ti));
    SolverConfig solver = options.solver;
    solver.tau = c0_grid[gi] * std::sqrt(log_n);
    solver.dt1 = steps.dt1;
    solver.dt2 = steps.dt2;
    const RecoveryResult result = solve(a, &nc, noise, solver);
    phantom[flat] = result.support.empty() ? 0 : 1;
  });

  CalibrationResult out;
  out.c0_grid = c0_grid;
  out.trials = trials;
  out.phantom_rate.resize(c0_grid.size());
  for (std::size_t gi = 0; gi < c0_grid.size(); ++gi) {
    int count = 0;
    for (int ti = 0; ti < trials; ++ti)
      count += phantom[gi * static_cast<std::size_t>(trials) +
                       static_cast<std::size_t>(ti)];
    out.phantom_rate[gi] = static_cast<double>(count) / trials;
    if (!out.chosen_c0 && count == 0) out.chosen_c0 = c0_grid[gi];
  }
  return out;
}

ComparisonResult run_comparison(const ImagingConfig& config,
                                const SourceScene& scene, double snr,
                                Seed seed, const ExperimentOptions& options) {
  validate(config);
  const Index n = config.data_dimension();
  const ComplexMatrix a = build_measurement_matrix(config);
  const NoiseCollector nc =
      build_collector_for(n, options, derive_seed(seed, kCollectorStream));

  ComparisonResult out;
  out.true_rho = scene_vector(scene, config.grid_size());
  out.b0 = synthesize_data(a, scene);
  out.b = add_noise(out.b0, snr, derive_seed(seed, kNoiseStream)).b;

  const StepSizes steps = select_steps(a, &nc, options.solver);
  const double sigma_a = spectral_norm(dense_operator(a)).value;

  SolverConfig plain = options.solver;
  plain.tau = 1.0;
  plain.dt1 = 2.0 / (plain.safety * sigma_a * sigma_a);
  plain.dt2 = plain.lambda / (plain.safety * sigma_a);
  out.without_collector = solve(a, nullptr, out.b, plain);

  SolverConfig with_nc = options.solver;
  with_nc.dt1 = steps.dt1;
  with_nc.dt2 = steps.dt2;

  with_nc.tau = 1.0;
  out.tau_one = solve(a, &nc, out.b, with_nc);

  with_nc.tau = tau_from(n, options.c0);
  out.tau_calibrated = solve(a, &nc, out.b, with_nc);
  out.tau_calibrated.debiased =
      debias_l2(a, out.b, out.tau_calibrated.support);
  return out;
}

PhaseDiagram phase_diagram(const ImagingConfig& config,
                           const std::vector<Index>& m_values,
                           const std::vector<double>& snr_values,
                           int trials_per_cell, Seed seed,
                           const ExperimentOptions& options) {
  validate(config);
  if (m_values.empty()) throw std::invalid_argument("phase_diagram: empty m list");
  if (snr_values.empty())
    throw std::invalid_argument("phase_diagram: empty snr list");
  if (trials_per_cell < 1)
    throw std::invalid_argument("phase_diagram: trials_per_cell must be >= 1");
  for (const Index m : m_values)
    if (m < 1 || m > config.grid_size())
      throw std::invalid_argument("phase_diagram: sparsity out of range");
  for (const double snr : snr_values)
    if (!(snr > 0.0))
      throw std::invalid_argument("phase_diagram: snr must be positive");

  const Index n = config.data_dimension();
  const ComplexMatrix a = build_measurement_matrix(config);
  const NoiseCollector nc =
      build_collector_for(n, options, derive_seed(seed, kCollectorStream));
  const StepSizes steps = select_steps(a, &nc, options.solver);

  SolverConfig solver = options.solver;
  solver.tau = tau_from(n, options.c0);
  solver.dt1 = steps.dt1;
  solver.dt2 = steps.dt2;

  const std::size_t trials = static_cast<std::size_t>(trials_per_cell);
  const std::size_t cells = m_values.size() * snr_values.size();
  std::vector<unsigned char> exact(cells * trials, 0);
  std::vector<unsigned char> nonconverged(cells * trials, 0);

  parallel_for(cells * trials, [&](std::size_t flat) {
    const std::size_t cell = flat / trials;
    const std::size_t trial = flat % trials;
    const std::size_t mi = cell / snr_values.size();
    const std::size_t si = cell % snr_values.size();
    const Seed trial_seed = derive_seed(seed, mi, si, trial);
    const SourceScene scene =
        random_scene(config, m_values[mi], options.amp_range,
                     derive_seed(trial_seed, kSceneStream));
    const ComplexVector b0 = synthesize_data(a, scene);
    const ComplexVector b =
        add_noise(b0, snr_values[si], derive_seed(trial_seed, kNoiseStream)).b;
    const RecoveryResult result = solve(a, &nc, b, solver);
    if (!result.converged) nonconverged[flat] = 1;
    exact[flat] =
        (result.converged && result.support == scene.positions) ? 1 : 0;
  });

  PhaseDiagram out;
  out.m_values = m_values;
  out.snr_values = snr_values;
  out.trials_per_cell = trials_per_cell;
  out.seed = seed;
  out.success.resize(static_cast<Index>(m_values.size()),
                     static_cast<Index>(snr_values.size()));
  for (std::size_t mi = 0; mi < m_values.size(); ++mi) {
    for (std::size_t si = 0; si < snr_values.size(); ++si) {
      const std::size_t cell = mi * snr_values.size() + si;
      int count = 0;
      for (std::size_t t = 0; t < trials; ++t) count += exact[cell * trials + t];
      out.success(static_cast<Index>(mi), static_cast<Index>(si)) =
          static_cast<double>(count) / trials_per_cell;
    }
  }
  for (const unsigned char flag : nonconverged) out.nonconverged_trials += flag;
  if (out.nonconverged_trials > 0)
    std::clog << "phase_diagram: " << out.nonconverged_trials
              << " trial(s) did not converge and count as failures\n";
  return out;
}

RealMatrix render_image(const ComplexVector& rho, const ImagingConfig& config) {
  validate(config);
  if (rho.size() != config.grid_size())
    throw std::invalid_argument("render_image: length differs from the grid size");
  RealMatrix image(config.pixels_cross, config.pixels_range);
  for (Index ir = 0; ir < config.pixels_range; ++ir)
    for (Index ic = 0; ic < config.pixels_cross; ++ic)
      image(ic, ir) = std::abs(rho[ic + config.pixels_cross * ir]);
  return image;
}

}  // namespace nc
