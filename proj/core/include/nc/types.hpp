#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>

namespace nc {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;  // column-major
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Seed for every random draw in the library. Identical seeds give
/// bit-identical sample streams within one release.
struct Seed {
  std::uint64_t value = 0;
};

/// Child seed from a master seed and up to three stream indices.
/// The mixing is a splitmix64 finalizer chained over the indices, so
/// each (block, cell, trial) gets its own reproducible stream without
/// any coordination between workers.
Seed derive_seed(Seed master, std::uint64_t i0, std::uint64_t i1 = 0,
                 std::uint64_t i2 = 0);

}  // namespace nc
