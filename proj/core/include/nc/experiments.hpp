#pragma once

#include "nc/imaging.hpp"
#include "nc/noise_collector.hpp"
#include "nc/solver.hpp"
#include "nc/types.hpp"

#include <optional>
#include <vector>

namespace nc {

/// Shared knobs of the experiment drivers. Per-trial seeds are derived
/// with derive_seed(master, m_index, snr_index, trial), so trials and
/// cells can run concurrently with identical results.
struct ExperimentOptions {
  double c0 = 0.8;
  /// Collector column budget; when unset, ceil(n^(beta-1)) blocks.
  std::optional<Index> sigma;
  double beta = 1.5;
  /// Amplitude magnitude range of random scenes.
  std::pair<double, double> amp_range{0.5, 1.0};
  /// Tolerances and iteration cap for every inner solve.
  SolverConfig solver;
};

NoiseCollector build_collector_for(Index n, const ExperimentOptions& options,
                                   Seed seed);

struct CalibrationResult {
  std::vector<double> c0_grid;
  std::vector<double> phantom_rate;  // per grid value, in [0, 1]
  std::optional<double> chosen_c0;   // smallest zero-phantom value
  int trials = 0;
};

/// Feeds the solver pure unit-norm noise and, for each grid value of c0,
/// records how often a nonempty support comes back. The chosen weight is
/// the smallest grid value with no phantoms across all trials; when none
/// qualifies, chosen_c0 stays unset.
CalibrationResult calibrate_c0(const ImagingConfig& config,
                               const NoiseCollector& nc,
                               const std::vector<double>& c0_grid, int trials,
                               Seed seed,
                               const ExperimentOptions& options = {});

struct ComparisonResult {
  RecoveryResult without_collector;  // plain l1 on the noisy data
  RecoveryResult tau_one;            // collector with tau = 1
  RecoveryResult tau_calibrated;     // collector with tau = c0 sqrt(ln n),
                                     // debiased field filled on its support
  ComplexVector true_rho;
  ComplexVector b0;
  ComplexVector b;
};

/// The four-way comparison on one shared data realization.
ComparisonResult run_comparison(const ImagingConfig& config,
                                const SourceScene& scene, double snr,
                                Seed seed,
                                const ExperimentOptions& options = {});

struct PhaseDiagram {
  std::vector<Index> m_values;
  std::vector<double> snr_values;
  /// Rows follow m_values, columns follow snr_values; each entry is the
  /// average of {0,1} exact-support indicators over trials_per_cell.
  RealMatrix success;
  int trials_per_cell = 0;
  Seed seed{};
  int nonconverged_trials = 0;
};

/// Sparsity-versus-SNR success map: per cell and trial, draw a scene,
/// synthesize, add noise, solve with tau = c0 sqrt(ln n), and score exact
/// support equality. Non-convergence counts as failure.
PhaseDiagram phase_diagram(const ImagingConfig& config,
                           const std::vector<Index>& m_values,
                           const std::vector<double>& snr_values,
                           int trials_per_cell, Seed seed,
                           const ExperimentOptions& options = {});

/// |rho| arranged on the image grid: rows are cross-range indices,
/// columns are range indices.
RealMatrix render_image(const ComplexVector& rho, const ImagingConfig& config);

}  // namespace nc
