#pragma once

#include "nc/types.hpp"

#include <utility>
#include <vector>

namespace nc {

/// Passive linear-array geometry: N receivers spread across the aperture,
/// centered on the array axis, with a planar image window of
/// window_width x window_depth centered at distance `range` in front of
/// the array. All quantities in SI units.
///
/// Grid indexing: k = cross_index + pixels_cross * range_index.
struct ImagingConfig {
  int num_receivers = 25;
  double aperture = 0.5;
  double range = 0.5;
  double central_frequency = 60e9;
  double bandwidth = 20e9;
  int num_frequencies = 25;
  double wave_speed = 3e8;
  double window_width = 0.2;
  double window_depth = 0.6;
  int pixels_cross = 41;
  int pixels_range = 41;
  Seed seed{1};

  /// n = N * S rows of the stacked system.
  Index data_dimension() const {
    return static_cast<Index>(num_receivers) * num_frequencies;
  }
  /// K unknowns.
  Index grid_size() const {
    return static_cast<Index>(pixels_cross) * pixels_range;
  }

  /// Cross-range coordinate of receiver r (the array lies at range 0).
  double receiver_position(Index r) const;
  /// (cross, range) coordinates of grid node k.
  std::pair<double, double> grid_position(Index k) const;
  /// l-th of the S frequencies equally spaced over
  /// [f0 - bandwidth/2, f0 + bandwidth/2].
  double frequency(Index l) const;
};

/// Throws invalid_argument naming the offending field.
void validate(const ImagingConfig& config);

/// Point sources on grid nodes with complex amplitudes, expressed in the
/// normalized-column coordinate system of the measurement matrix.
struct SourceScene {
  std::vector<Index> positions;  // distinct, sorted grid indices
  ComplexVector amplitudes;      // one nonzero amplitude per position

  Index sparsity() const { return static_cast<Index>(positions.size()); }
};

/// The scene as a dense length-K coefficient vector.
ComplexVector scene_vector(const SourceScene& scene, Index k);

/// Free-space response exp(i w r / c) / (4 pi r) from grid node
/// grid_point to every receiver at frequency index freq_index. Throws on
/// a coincident receiver/grid pair (singular 1/r).
ComplexVector green_vector(const ImagingConfig& config, Index grid_point,
                           Index freq_index);

/// n x K matrix whose column k stacks the per-frequency response vectors
/// of grid node k (frequency-major, matching the data layout) and is
/// normalized to unit l2 length.
ComplexMatrix build_measurement_matrix(const ImagingConfig& config);

/// Exact linear synthesis b0 = sum_j amplitude_j * a_{position_j}.
ComplexVector synthesize_data(const ComplexMatrix& a, const SourceScene& scene);

struct NoisyData {
  ComplexVector b;
  ComplexVector e;
};

/// Adds noise drawn uniformly on the sphere and scaled so that
/// |b0| / |e| = snr. An infinite snr returns b = b0 with e = 0.
NoisyData add_noise(const ComplexVector& b0, double snr, Seed seed);

/// m distinct uniform grid positions with amplitudes of uniform magnitude
/// in amp_range and uniform phase.
SourceScene random_scene(const ImagingConfig& config, Index m,
                         std::pair<double, double> amp_range, Seed seed);

}  // namespace nc
