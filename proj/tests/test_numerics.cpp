#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nc/numerics.hpp>

#include "oracles.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <complex>

using namespace nc;

namespace {

double rel_error(const ComplexVector& got, const ComplexVector& want) {
  return (got - want).norm() / want.norm();
}

}  // namespace

TEST_CASE("dft of a delta is the all-ones vector") {
  ComplexVector v = ComplexVector::Zero(4);
  v[0] = 1.0;
  const ComplexVector x = dft(v, DftDirection::forward);
  for (Index k = 0; k < 4; ++k) {
    CHECK(x[k].real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(x[k].imag() == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("dft of the all-ones vector concentrates at zero frequency") {
  const ComplexVector x =
      dft(ComplexVector::Ones(4), DftDirection::forward);
  const ComplexVector expected = oracles::naive_dft(ComplexVector::Ones(4), true);
  CHECK(std::abs(x[0] - Complex(4.0, 0.0)) < 1e-13);
  for (Index k = 1; k < 4; ++k) CHECK(std::abs(x[k]) < 1e-13);
  CHECK(rel_error(x, expected) < 1e-13);
}

TEST_CASE("dft round trip at the odd paper block length") {
  const ComplexVector v = sample_complex_gaussian(625, Seed{7});
  const ComplexVector back =
      dft(dft(v, DftDirection::forward), DftDirection::inverse);
  CHECK(rel_error(back, v) <= 1e-12);
}

TEST_CASE("dft matches the quadratic reference at assorted lengths") {
  for (const Index n : {1, 2, 3, 5, 12, 17, 40, 125}) {
    const ComplexVector v = sample_complex_gaussian(n, Seed{static_cast<std::uint64_t>(100 + n)});
    CHECK(rel_error(dft(v, DftDirection::forward), oracles::naive_dft(v, true)) < 1e-11);
    CHECK(rel_error(dft(v, DftDirection::inverse), oracles::naive_dft(v, false)) < 1e-11);
  }
}

TEST_CASE("dft satisfies Parseval with the n factor") {
  const ComplexVector v = sample_complex_gaussian(311, Seed{11});
  const double lhs = dft(v, DftDirection::forward).squaredNorm();
  const double rhs = 311.0 * v.squaredNorm();
  CHECK(std::abs(lhs - rhs) <= 1e-10 * rhs);
}

TEST_CASE("dft rejects empty input") {
  CHECK_THROWS_AS(dft(ComplexVector(), DftDirection::forward),
                  std::invalid_argument);
}

TEST_CASE("spectral norm of the identity is one") {
  LinearOperator id;
  id.rows = id.cols = 37;
  id.apply = [](const ComplexVector& x) { return x; };
  id.apply_adjoint = [](const ComplexVector& x) { return x; };
  const auto est = spectral_norm(id);
  CHECK(est.converged);
  CHECK(est.value == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("spectral norm of a diagonal operator is the largest entry") {
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  d(2, 2) = 0.5;
  const auto est = spectral_norm(dense_operator(d));
  CHECK(est.converged);
  CHECK(est.value == doctest::Approx(3.0).epsilon(1e-4));
}

TEST_CASE("spectral norm matches a dense SVD on a random matrix") {
  ComplexMatrix a(20, 50);
  const ComplexVector entries = sample_complex_gaussian(20 * 50, Seed{21});
  for (Index j = 0; j < 50; ++j)
    a.col(j) = entries.segment(20 * j, 20);
  const double reference =
      Eigen::BDCSVD<ComplexMatrix>(a).singularValues()(0);
  const auto est = spectral_norm(dense_operator(a), 1e-9, 5000);
  CHECK(est.converged);
  CHECK(std::abs(est.value - reference) <= 1e-6 * reference);
}

TEST_CASE("spectral norm reports non-convergence but keeps the estimate") {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 2.0;  // two iterations cannot settle to 1e-12 here
  const auto est = spectral_norm(dense_operator(d), 1e-12, 2);
  CHECK_FALSE(est.converged);
  CHECK(est.value > 2.0);
  CHECK(est.value < 3.0 + 1e-9);
}

TEST_CASE("spectral norm is deterministic in the seed") {
  ComplexMatrix a(8, 13);
  const ComplexVector entries = sample_complex_gaussian(8 * 13, Seed{5});
  for (Index j = 0; j < 13; ++j) a.col(j) = entries.segment(8 * j, 8);
  const auto first = spectral_norm(dense_operator(a), 1e-6, 100, Seed{9});
  const auto second = spectral_norm(dense_operator(a), 1e-6, 100, Seed{9});
  CHECK(first.value == second.value);
  CHECK(first.iterations == second.iterations);
}

TEST_CASE("adjoint consistency of dense operators") {
  ComplexMatrix a(9, 14);
  const ComplexVector entries = sample_complex_gaussian(9 * 14, Seed{31});
  for (Index j = 0; j < 14; ++j) a.col(j) = entries.segment(9 * j, 9);
  const LinearOperator op = dense_operator(a);
  for (int rep = 0; rep < 10; ++rep) {
    const ComplexVector x =
        sample_complex_gaussian(14, Seed{static_cast<std::uint64_t>(40 + rep)});
    const ComplexVector y =
        sample_complex_gaussian(9, Seed{static_cast<std::uint64_t>(60 + rep)});
    const Complex lhs = op.apply(x).dot(y);
    const Complex rhs = x.dot(op.apply_adjoint(y));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(lhs));
  }
}

TEST_CASE("complex gaussian sampling is deterministic per seed") {
  const ComplexVector a = sample_complex_gaussian(64, Seed{123});
  const ComplexVector b = sample_complex_gaussian(64, Seed{123});
  CHECK(a == b);
  const ComplexVector c = sample_complex_gaussian(64, Seed{124});
  CHECK(a != c);
}

TEST_CASE("complex gaussian has unit mean squared modulus at large n") {
  const ComplexVector v = sample_complex_gaussian(100000, Seed{2024});
  const double mean_sq = v.squaredNorm() / 100000.0;
  CHECK(std::abs(mean_sq - 1.0) < 0.03);
}

TEST_CASE("gaussian sampling rejects n = 0") {
  CHECK_THROWS_AS(sample_complex_gaussian(0, Seed{1}), std::invalid_argument);
  CHECK_THROWS_AS(sample_unit_sphere(0, Seed{1}), std::invalid_argument);
}

TEST_CASE("unit sphere samples have unit norm") {
  for (int rep = 0; rep < 5; ++rep) {
    const ComplexVector v =
        sample_unit_sphere(625, Seed{static_cast<std::uint64_t>(rep)});
    CHECK(std::abs(v.norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("independent sphere samples are nearly orthogonal at n = 625") {
  // |<u, v>| < 5/sqrt(625) = 0.2 should hold for essentially every pair.
  int violations = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const ComplexVector u =
        sample_unit_sphere(625, Seed{static_cast<std::uint64_t>(2 * rep)});
    const ComplexVector v =
        sample_unit_sphere(625, Seed{static_cast<std::uint64_t>(2 * rep + 1)});
    if (std::abs(u.dot(v)) >= 0.2) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("unit sphere degenerates to a unit-modulus scalar at n = 1") {
  const ComplexVector v = sample_unit_sphere(1, Seed{77});
  CHECK(v.size() == 1);
  CHECK(std::abs(std::abs(v[0]) - 1.0) <= 1e-12);
}

TEST_CASE("derived seeds separate streams") {
  const Seed master{42};
  CHECK(derive_seed(master, 0).value != derive_seed(master, 1).value);
  CHECK(derive_seed(master, 0, 1).value != derive_seed(master, 1, 0).value);
  CHECK(derive_seed(master, 3, 4, 5).value == derive_seed(master, 3, 4, 5).value);
}
