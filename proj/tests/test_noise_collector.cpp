#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nc/noise_collector.hpp>
#include <nc/numerics.hpp>

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

using namespace nc;

namespace {

ComplexMatrix dense_oracle(const NoiseCollector& nc) {
  ComplexMatrix dense(nc.n(), nc.num_columns());
  for (Index i = 0; i < nc.num_blocks(); ++i)
    dense.middleCols(i * nc.n(), nc.n()) =
        oracles::dense_circulant(nc.generators()[static_cast<std::size_t>(i)]);
  return dense;
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("block count follows ceil(n^(beta-1))") {
  const NoiseCollector nc = NoiseCollector::build(625, 1.5, Seed{1});
  CHECK(nc.num_blocks() == 25);
  CHECK(nc.num_columns() == 15625);
  CHECK(nc.beta() == doctest::Approx(1.5).epsilon(1e-12));

  const NoiseCollector small = NoiseCollector::build(4, 1.5, Seed{1});
  CHECK(small.num_blocks() == 2);
  CHECK(small.num_columns() == 8);
}

TEST_CASE("explicit column budget reproduces the 10^4 collector") {
  const NoiseCollector nc = NoiseCollector::build_with_sigma(625, 10000, Seed{1});
  CHECK(nc.num_blocks() == 16);
  CHECK(nc.num_columns() == 10000);
}

TEST_CASE("construction is deterministic in (n, beta, seed)") {
  const NoiseCollector a = NoiseCollector::build(32, 1.4, Seed{9});
  const NoiseCollector b = NoiseCollector::build(32, 1.4, Seed{9});
  REQUIRE(a.num_blocks() == b.num_blocks());
  for (Index i = 0; i < a.num_blocks(); ++i)
    CHECK(a.generators()[static_cast<std::size_t>(i)] ==
          b.generators()[static_cast<std::size_t>(i)]);
}

TEST_CASE("beta at or below one is rejected") {
  CHECK_THROWS_AS(NoiseCollector::build(16, 1.0, Seed{1}), std::invalid_argument);
  CHECK_THROWS_AS(NoiseCollector::build(16, 0.5, Seed{1}), std::invalid_argument);
}

TEST_CASE("generators are unit norm, hence all columns are") {
  const NoiseCollector nc = NoiseCollector::build(48, 1.5, Seed{3});
  for (const auto& g : nc.generators())
    CHECK(std::abs(g.norm() - 1.0) <= 1e-12);
  const ComplexMatrix dense = nc.materialize_dense();
  for (Index j = 0; j < dense.cols(); ++j)
    CHECK(std::abs(dense.col(j).norm() - 1.0) <= 1e-12);
}

TEST_CASE("a delta generator gives an identity block") {
  ComplexVector delta = ComplexVector::Zero(6);
  delta[0] = 1.0;
  const NoiseCollector nc = NoiseCollector::from_generators({delta, delta});
  const ComplexVector eta = sample_complex_gaussian(12, Seed{5});
  const ComplexVector out = nc.matvec(eta);
  const ComplexVector expected = eta.head(6) + eta.tail(6);
  CHECK((out - expected).norm() <= 1e-12 * expected.norm());

  const ComplexVector v = sample_complex_gaussian(6, Seed{6});
  const ComplexVector adj = nc.adjoint_matvec(v);
  CHECK((adj.head(6) - v).norm() <= 1e-12 * v.norm());
  CHECK((adj.tail(6) - v).norm() <= 1e-12 * v.norm());
}

TEST_CASE("fast matvec matches the dense circulant oracle") {
  const NoiseCollector nc = NoiseCollector::build_with_blocks(8, 2, Seed{17});
  const ComplexMatrix dense = dense_oracle(nc);
  const ComplexVector eta = sample_complex_gaussian(16, Seed{18});
  const ComplexVector fast = nc.matvec(eta);
  const ComplexVector slow = dense * eta;
  CHECK((fast - slow).norm() <= 1e-10 * slow.norm());

  const ComplexVector v = sample_complex_gaussian(8, Seed{19});
  const ComplexVector fast_adj = nc.adjoint_matvec(v);
  const ComplexVector slow_adj = dense.adjoint() * v;
  CHECK((fast_adj - slow_adj).norm() <= 1e-10 * slow_adj.norm());
}

TEST_CASE("matvec of zero is zero and lengths are enforced") {
  const NoiseCollector nc = NoiseCollector::build_with_blocks(8, 2, Seed{21});
  CHECK(nc.matvec(ComplexVector::Zero(16)).norm() == 0.0);
  CHECK_THROWS_AS(nc.matvec(ComplexVector::Zero(8)), std::invalid_argument);
  CHECK_THROWS_AS(nc.adjoint_matvec(ComplexVector::Zero(16)),
                  std::invalid_argument);
}

TEST_CASE("matvec and adjoint are a consistent adjoint pair") {
  const NoiseCollector nc = NoiseCollector::build_with_blocks(13, 3, Seed{23});
  for (int rep = 0; rep < 5; ++rep) {
    const ComplexVector eta =
        sample_complex_gaussian(39, Seed{static_cast<std::uint64_t>(rep * 2)});
    const ComplexVector v =
        sample_complex_gaussian(13, Seed{static_cast<std::uint64_t>(rep * 2 + 1)});
    const Complex lhs = nc.matvec(eta).dot(v);
    const Complex rhs = eta.dot(nc.adjoint_matvec(v));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(lhs));
  }
}

TEST_CASE("fast/dense equivalence over random small collectors") {
  std::mt19937_64 rng(404);
  for (int rep = 0; rep < 12; ++rep) {
    const Index n = 2 + static_cast<Index>(rng() % 63);
    const Index blocks = 1 + static_cast<Index>(rng() % 4);
    const NoiseCollector nc =
        NoiseCollector::build_with_blocks(n, blocks, Seed{rng()});
    const ComplexMatrix dense = dense_oracle(nc);
    const ComplexVector eta = sample_complex_gaussian(n * blocks, Seed{rng()});
    const ComplexVector v = sample_complex_gaussian(n, Seed{rng()});
    CHECK((nc.matvec(eta) - dense * eta).norm() <=
          1e-10 * (dense * eta).norm());
    CHECK((nc.adjoint_matvec(v) - dense.adjoint() * v).norm() <=
          1e-10 * (dense.adjoint() * v).norm());
  }
}

TEST_CASE("explicit generator layout in the dense materialization") {
  ComplexVector g(3);
  g << Complex(0.1, 0.2), Complex(0.3, -0.4), Complex(0.5, 0.6);
  g.normalize();
  const NoiseCollector nc = NoiseCollector::from_generators({g});
  const ComplexMatrix dense = nc.materialize_dense();
  REQUIRE(dense.rows() == 3);
  REQUIRE(dense.cols() == 3);
  // column 0 = (g0,g1,g2), column 1 = (g2,g0,g1), column 2 = (g1,g2,g0)
  CHECK(dense(0, 0) == g[0]);
  CHECK(dense(1, 0) == g[1]);
  CHECK(dense(2, 0) == g[2]);
  CHECK(dense(0, 1) == g[2]);
  CHECK(dense(1, 1) == g[0]);
  CHECK(dense(2, 1) == g[1]);
  CHECK(dense(0, 2) == g[1]);
  CHECK(dense(1, 2) == g[2]);
  CHECK(dense(2, 2) == g[0]);
}

TEST_CASE("single columns match the dense materialization") {
  const NoiseCollector nc = NoiseCollector::build_with_blocks(11, 3, Seed{31});
  const ComplexMatrix dense = nc.materialize_dense();
  for (const Index j : {0L, 1L, 10L, 11L, 21L, 32L})
    CHECK((nc.column(j) - dense.col(j)).norm() <= 1e-15);
}

TEST_CASE("materialization guard refuses oversized collectors") {
  const NoiseCollector nc = NoiseCollector::build_with_blocks(64, 4, Seed{33});
  CHECK_THROWS_AS(nc.materialize_dense(1000), std::length_error);
}

TEST_CASE("save/load round trips bit-exactly and matches a rebuild") {
  const NoiseCollector nc = NoiseCollector::build_with_blocks(19, 2, Seed{777});
  const std::string path = temp_path("nc_roundtrip.csv");
  nc.save(path);
  const NoiseCollector loaded = NoiseCollector::load(path);
  std::filesystem::remove(path);

  REQUIRE(loaded.n() == nc.n());
  REQUIRE(loaded.num_blocks() == nc.num_blocks());
  CHECK(loaded.seed().value == nc.seed().value);
  for (Index i = 0; i < nc.num_blocks(); ++i)
    CHECK(loaded.generators()[static_cast<std::size_t>(i)] ==
          nc.generators()[static_cast<std::size_t>(i)]);

  // Rebuilding from the stored (n, B, seed) reproduces the generators.
  const NoiseCollector rebuilt = NoiseCollector::build_with_blocks(
      loaded.n(), loaded.num_blocks(), loaded.seed());
  for (Index i = 0; i < nc.num_blocks(); ++i)
    CHECK(rebuilt.generators()[static_cast<std::size_t>(i)] ==
          nc.generators()[static_cast<std::size_t>(i)]);
}

TEST_CASE("coherence audit flags a planted collector column") {
  const NoiseCollector nc = NoiseCollector::build_with_blocks(16, 2, Seed{51});
  ComplexMatrix a(16, 3);
  a.col(0) = nc.column(5);
  a.col(1) = sample_unit_sphere(16, Seed{52});
  a.col(2) = sample_unit_sphere(16, Seed{53});
  const CoherenceReport report = coherence_audit(nc, a, 0.8, 20000, Seed{54});
  CHECK(report.max_ac == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(report.pass);
  CHECK(report.num_pairs_sampled == 40000);
}

TEST_CASE("coherence audit validates its inputs") {
  const NoiseCollector nc = NoiseCollector::build_with_blocks(16, 2, Seed{55});
  ComplexMatrix a(16, 2);
  a.col(0) = sample_unit_sphere(16, Seed{56});
  a.col(1) = 2.0 * sample_unit_sphere(16, Seed{57});  // not unit norm
  CHECK_THROWS_AS(coherence_audit(nc, a, 0.8, 10, Seed{58}),
                  std::invalid_argument);
  a.col(1).normalize();
  CHECK_THROWS_AS(coherence_audit(nc, a, 0.8, 0, Seed{58}),
                  std::invalid_argument);
}

TEST_CASE("matvec cost grows about linearly in the block count") {
  // Warm timing check of the O(B n log n) scaling: doubling B at fixed n
  // should cost clearly less than the dense 4x, allowing ~2.5x.
  const Index n = 1024;
  const NoiseCollector small = NoiseCollector::build_with_blocks(n, 8, Seed{61});
  const NoiseCollector big = NoiseCollector::build_with_blocks(n, 16, Seed{62});
  const ComplexVector eta_small = sample_complex_gaussian(n * 8, Seed{63});
  const ComplexVector eta_big = sample_complex_gaussian(n * 16, Seed{64});

  auto time_matvec = [](const NoiseCollector& nc, const ComplexVector& eta) {
    ComplexVector sink = nc.matvec(eta);  // warm-up
    double best = 1e300;
    for (int rep = 0; rep < 7; ++rep) {
      const auto start = std::chrono::steady_clock::now();
      for (int k = 0; k < 20; ++k) sink += nc.matvec(eta);
      const auto stop = std::chrono::steady_clock::now();
      best = std::min(best, std::chrono::duration<double>(stop - start).count());
    }
    volatile double keep = sink.norm();
    (void)keep;
    return best;
  };

  const double t_small = time_matvec(small, eta_small);
  const double t_big = time_matvec(big, eta_big);
  CHECK(t_big / t_small < 2.5);
}
