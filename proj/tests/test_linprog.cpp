#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "safesets/linprog.hpp"
#include "support/oracles.hpp"

using namespace safesets;

TEST_CASE("maximize x1+x2 over the unit box") {
  const Matrix h{{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
  const Vector off{1.0, 1.0, 1.0, 1.0};
  const LPResult r = lp_maximize({1.0, 1.0}, h, off);
  REQUIRE(r.status == LPStatus::Optimal);
  CHECK(r.optimum == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(r.witness[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.witness[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("infeasible pair of rows") {
  const Matrix h{{1.0}, {-1.0}};
  const LPResult r = lp_maximize({1.0}, h, Vector{1.0, -2.0});
  CHECK(r.status == LPStatus::Infeasible);
}

TEST_CASE("free velocity direction is unbounded") {
  const Matrix h{{1.0, 0.0}, {-1.0, 0.0}};
  const LPResult r = lp_maximize({0.0, 1.0}, h, Vector{0.4, 0.4});
  CHECK(r.status == LPStatus::Unbounded);
}

TEST_CASE("optimal witnesses are feasible and consistent") {
  oracles::Rng rng(12345);
  int optimal_seen = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(1.0, 4.0));
    const std::size_t m = 2 + static_cast<std::size_t>(rng.uniform(1.0, 10.0));
    Matrix h = oracles::random_matrix(rng, m, n);
    Vector off(m);
    for (std::size_t i = 0; i < m; ++i) off[i] = rng.uniform(-0.5, 2.0);
    Vector c(n);
    for (std::size_t j = 0; j < n; ++j) c[j] = rng.uniform(-1.0, 1.0);

    const LPResult r = lp_maximize(c, h, off);
    if (r.status != LPStatus::Optimal) continue;
    ++optimal_seen;
    for (std::size_t i = 0; i < m; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += h(i, j) * r.witness[j];
      CHECK(acc <= off[i] + 1e-9);
    }
    CHECK(std::abs(dot(c, r.witness) - r.optimum) <= 1e-9);
  }
  CHECK(optimal_seen > 20);
}

TEST_CASE("simplex optimum matches the vertex-enumeration oracle") {
  oracles::Rng rng(777);
  int checked = 0;
  while (checked < 60) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform(0.0, 2.99));
    const std::size_t extra = static_cast<std::size_t>(rng.uniform(0.0, 4.99));
    // Random halfspaces plus a bounding box guarantee a bounded problem; the
    // box is kept loose enough that random rows still matter.
    const std::size_t m = 2 * n + extra;
    Matrix h(m, n);
    Vector off(m);
    for (std::size_t i = 0; i < n; ++i) {
      h(2 * i, i) = 1.0;
      off[2 * i] = rng.uniform(0.5, 3.0);
      h(2 * i + 1, i) = -1.0;
      off[2 * i + 1] = rng.uniform(0.5, 3.0);
    }
    for (std::size_t i = 2 * n; i < m; ++i) {
      double nrm = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        h(i, j) = rng.uniform(-1.0, 1.0);
        nrm += h(i, j) * h(i, j);
      }
      if (nrm < 1e-3) {
        h(i, 0) = 1.0;
      }
      off[i] = rng.uniform(0.1, 2.0);
    }
    Vector c(n);
    for (std::size_t j = 0; j < n; ++j) c[j] = rng.uniform(-1.0, 1.0);

    const LPResult r = lp_maximize(c, h, off);
    REQUIRE(r.status == LPStatus::Optimal);  // origin is always feasible here
    const auto oracle = oracles::vertex_enum_lp(c, h, off);
    REQUIRE(oracle.has_value());
    CHECK(r.optimum == doctest::Approx(*oracle).epsilon(1e-7));
    ++checked;
  }
}

TEST_CASE("negative offsets route through phase 1") {
  // {x >= 1, x <= 3}: feasible but the slack basis is not.
  const Matrix h{{-1.0}, {1.0}};
  const LPResult r = lp_maximize({-1.0}, h, Vector{-1.0, 3.0});
  REQUIRE(r.status == LPStatus::Optimal);
  CHECK(r.optimum == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(r.witness[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("duplicate and redundant rows are harmless") {
  const Matrix h{{1.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}, {1.0, 1.0}};
  const Vector off{1.0, 1.0, 1.0, 1.0, 1.0, 5.0};
  const LPResult r = lp_maximize({1.0, 0.0}, h, off);
  REQUIRE(r.status == LPStatus::Optimal);
  CHECK(r.optimum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("dimension mismatches throw") {
  CHECK_THROWS_AS(lp_maximize({1.0, 2.0}, Matrix(2, 1), Vector{1.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(lp_maximize({1.0}, Matrix(2, 1), Vector{1.0}),
                  std::invalid_argument);
}
