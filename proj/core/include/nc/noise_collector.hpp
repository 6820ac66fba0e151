#pragma once

#include "nc/types.hpp"

#include <string>
#include <vector>

namespace nc {

/// Concatenation C = [C_1 | C_2 | ... | C_B] of circulant blocks, each
/// generated by a unit-norm random vector drawn on the complex sphere.
/// Only the B generators and their spectra are stored, never the dense
/// n x (B n) matrix; products go through the FFT at O(B n log n).
///
/// Convention: the first column of C_i is generator i, and column k of a
/// block is the k-th downward cyclic shift, so C_i x is the circular
/// convolution of the generator with x.
class NoiseCollector {
 public:
  /// B = ceil(n^(beta - 1)) blocks. Requires n >= 2 and beta > 1: the
  /// collector must have more columns than the data dimension.
  static NoiseCollector build(Index n, double beta, Seed seed);

  /// Explicit column budget: B = ceil(sigma / n) blocks, so the actual
  /// column count is the smallest multiple of n at or above sigma.
  static NoiseCollector build_with_sigma(Index n, Index sigma, Seed seed);

  /// Explicit block count.
  static NoiseCollector build_with_blocks(Index n, Index num_blocks, Seed seed);

  /// Wraps caller-provided unit-norm generators (custom dictionaries,
  /// test fixtures). Throws unless every generator has unit l2 norm.
  static NoiseCollector from_generators(std::vector<ComplexVector> generators);

  Index n() const { return n_; }
  Index num_blocks() const { return static_cast<Index>(generators_.size()); }
  Index num_columns() const { return n_ * num_blocks(); }
  /// Effective exponent ln(num_columns) / ln(n).
  double beta() const { return beta_; }
  Seed seed() const { return seed_; }
  const std::vector<ComplexVector>& generators() const { return generators_; }

  /// C * eta for eta of length num_columns().
  ComplexVector matvec(const ComplexVector& eta) const;

  /// C^* v for v of length n(); the stacked per-block adjoint products,
  /// computed with conjugated generator spectra.
  ComplexVector adjoint_matvec(const ComplexVector& v) const;

  /// Column j without materializing its block.
  ComplexVector column(Index j) const;
  void column_into(Index j, ComplexVector& out) const;

  /// Dense n x num_columns() materialization for oracles and small
  /// audits. Refuses to allocate more than max_entries coefficients.
  ComplexMatrix materialize_dense(Index max_entries = 1000000) const;

  /// Text format: header line "n,B,seed,beta", then one CSV row of
  /// (re,im) pairs per generator at full double precision.
  void save(const std::string& path) const;
  static NoiseCollector load(const std::string& path);

 private:
  NoiseCollector() = default;
  void compute_spectra();

  Index n_ = 0;
  double beta_ = 0.0;
  Seed seed_{};
  std::vector<ComplexVector> generators_;
  std::vector<ComplexVector> spectra_;  // forward DFTs of the generators
};

struct CoherenceReport {
  double max_ac = 0.0;     // max sampled |<a_i, c_j>|
  double max_cc = 0.0;     // max sampled |<c_i, c_j>|, distinct columns
  double threshold = 0.0;  // c0 * sqrt(ln n / n)
  Index num_pairs_sampled = 0;
  bool pass = false;
};

/// Statistical decoherence check between the measurement matrix and the
/// collector: samples num_samples (a_i, c_j) pairs and num_samples
/// distinct-column (c_i, c_j) pairs, materializing single columns on
/// demand, and compares the observed maxima against c0 * sqrt(ln n / n).
/// a must have n rows and unit-norm columns.
CoherenceReport coherence_audit(const NoiseCollector& nc,
                                const ComplexMatrix& a, double c0,
                                Index num_samples, Seed seed);

}  // namespace nc
