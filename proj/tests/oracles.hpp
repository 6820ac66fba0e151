#pragma once

// Independent reference implementations used only to check the library:
// quadratic-time transforms, dense materializations and exhaustive
// searches. Nothing here shares code with the production paths.

#include <nc/types.hpp>

#include <utility>

namespace nc::oracles {

/// O(n^2) reference DFT with the same convention as nc::dft.
ComplexVector naive_dft(const ComplexVector& v, bool forward);

/// Dense n x n circulant whose first column is the generator and whose
/// k-th column is the k-th downward cyclic shift.
ComplexMatrix dense_circulant(const ComplexVector& generator);

/// Largest |<a_i, a_j>| over distinct columns.
double mutual_coherence(const ComplexMatrix& a);

/// Best single-column least-squares fit: minimizes |alpha * a_k - b|
/// over k and alpha. Returns (k, alpha).
std::pair<Index, Complex> best_one_sparse_fit(const ComplexMatrix& a,
                                              const ComplexVector& b);

/// Random matrix with independent unit-norm Gaussian columns.
ComplexMatrix random_unit_columns(Index rows, Index cols, Seed seed);

}  // namespace nc::oracles
