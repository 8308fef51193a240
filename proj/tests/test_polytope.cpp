#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "safesets/polytope.hpp"
#include "support/oracles.hpp"

using namespace safesets;

namespace {

// The position-only track constraint set: |x1| <= 0.4, x2 free.
HPolytope track_set() {
  return HPolytope(Matrix{{1.0, 0.0}, {-1.0, 0.0}}, Vector{0.4, 0.4});
}

HPolytope unit_box() { return HPolytope::box({{-1, 1}, {-1, 1}}); }

bool same_membership(const HPolytope& a, const HPolytope& b, oracles::Rng& rng,
                     int samples, double lo, double hi) {
  for (int k = 0; k < samples; ++k) {
    const Vector x{rng.uniform(lo, hi), rng.uniform(lo, hi)};
    if (a.contains(x) != b.contains(x)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("contains is boundary inclusive and rejects bad dimensions") {
  const HPolytope x = track_set();
  CHECK(x.contains(Vector{0.0, 0.0}));
  CHECK(x.contains(Vector{0.4, 123.0}));
  CHECK_FALSE(x.contains(Vector{0.401, 0.0}));
  CHECK_THROWS_AS(x.contains(Vector{0.0}), std::invalid_argument);
}

TEST_CASE("construction rejects zero rows and bad offsets") {
  CHECK_THROWS_AS(HPolytope(Matrix(1, 2), Vector{1.0}), std::invalid_argument);
  CHECK_THROWS_AS(HPolytope(Matrix{{1.0, 0.0}}, Vector{1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("intersecting a set with itself changes nothing") {
  const HPolytope x = track_set();
  const HPolytope both = intersect(x, x);
  CHECK(is_subset(both, x));
  CHECK(is_subset(x, both));
}

TEST_CASE("box intersected with a halfplane") {
  const HPolytope got = intersect(
      unit_box(), HPolytope(Matrix{{1.0, 0.0}}, Vector{0.0}));
  const HPolytope want = HPolytope::box({{-1, 0}, {-1, 1}});
  CHECK(is_subset(got, want));
  CHECK(is_subset(want, got));
}

TEST_CASE("track set intersected with a slanted slab is bounded") {
  const HPolytope slab =
      HPolytope(Matrix{{1.0, 0.002}, {-1.0, -0.002}}, Vector{0.4, 0.4});
  const HPolytope got = intersect(track_set(), slab);
  CHECK(got.num_rows() == 4);
  const LPResult up = got.support({0.0, 1.0});
  REQUIRE(up.status == LPStatus::Optimal);
  CHECK(up.optimum == doctest::Approx(400.0).epsilon(1e-6));
  const LPResult down = got.support({0.0, -1.0});
  REQUIRE(down.status == LPStatus::Optimal);
  CHECK(down.optimum == doctest::Approx(400.0).epsilon(1e-6));
}

TEST_CASE("intersection commutes in set semantics") {
  oracles::Rng rng(5);
  const HPolytope p = unit_box();
  const HPolytope q =
      HPolytope(Matrix{{1.0, 1.0}, {-1.0, 0.5}, {0.0, -1.0}}, Vector{1.2, 0.9, 0.7});
  const HPolytope pq = intersect(p, q);
  const HPolytope qp = intersect(q, p);
  CHECK(same_membership(pq, qp, rng, 10000, -1.5, 1.5));
}

TEST_CASE("redundancy removal drops duplicates and loose rows") {
  const HPolytope dup = HPolytope(
      Matrix{{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}, {1.0, 0.0}},
      Vector{1.0, 1.0, 1.0, 1.0, 1.0});
  CHECK(remove_redundancy(dup).num_rows() == 4);

  const HPolytope loose = HPolytope(
      Matrix{{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}, {1.0, 0.0}},
      Vector{1.0, 1.0, 1.0, 1.0, 5.0});
  const HPolytope pruned = remove_redundancy(loose);
  CHECK(pruned.num_rows() == 4);
  for (std::size_t i = 0; i < pruned.num_rows(); ++i) {
    CHECK(pruned.offset(i) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("redundancy removal preserves membership on random sets") {
  oracles::Rng rng(31);
  for (int rep = 0; rep < 5; ++rep) {
    Matrix h(20, 2);
    Vector off(20);
    for (std::size_t i = 0; i < 20; ++i) {
      const double ang = rng.uniform(0.0, 2.0 * 3.141592653589793);
      h(i, 0) = std::cos(ang);
      h(i, 1) = std::sin(ang);
      off[i] = rng.uniform(0.3, 2.0);
    }
    const HPolytope p(h, off);
    const HPolytope pruned = remove_redundancy(p);
    CHECK(pruned.num_rows() <= p.num_rows());
    oracles::Rng sample_rng(1000 + rep);
    CHECK(same_membership(p, pruned, sample_rng, 10000, -2.5, 2.5));
  }
}

TEST_CASE("pre-set under the identity is the same set") {
  const HPolytope x = track_set();
  const HPolytope pre = pre_set(x, Matrix::identity(2));
  CHECK(pre.h_matrix() == x.h_matrix());
  CHECK(pre.h_vector() == x.h_vector());
}

TEST_CASE("pre-set of a huge box maps the box rows") {
  const HPolytope big = HPolytope::box({{-1e9, 1e9}, {-1e9, 1e9}});
  const Matrix a{{0.5, 0.0}, {0.0, 0.5}};
  const HPolytope pre = pre_set(big, a);
  CHECK(pre.num_rows() == 4);
  CHECK(pre.contains(Vector{1.9e9, 0.0}));
  CHECK_FALSE(pre.contains(Vector{2.1e9, 0.0}));
}

TEST_CASE("pre-set of the track under the closed loop is the slanted slab") {
  const Matrix a_cl{{1.0, 0.002}, {-0.075, 0.975}};
  const HPolytope pre = pre_set(track_set(), a_cl);
  REQUIRE(pre.num_rows() == 2);
  CHECK(pre.h_matrix()(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pre.h_matrix()(0, 1) == doctest::Approx(0.002).epsilon(1e-15));
  CHECK(pre.h_matrix()(1, 0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(pre.h_matrix()(1, 1) == doctest::Approx(-0.002).epsilon(1e-15));
  CHECK(pre.offset(0) == 0.4);
  CHECK(pre.offset(1) == 0.4);
}

TEST_CASE("forward map lands inside the source set") {
  oracles::Rng rng(17);
  const HPolytope p = unit_box();
  const Matrix a{{0.9, 0.3}, {-0.2, 0.8}};
  const HPolytope pre = pre_set(p, a);
  const auto bbox = oracles::bounding_box_2d(pre);
  for (int k = 0; k < 1000; ++k) {
    const auto x = oracles::sample_in_polytope(rng, pre, bbox);
    const Vector y = a.apply(Vector{x[0], x[1]});
    CHECK(p.contains(y, 1e-9));
  }
}

TEST_CASE("subset checks") {
  CHECK(is_subset(track_set(), track_set()));
  CHECK(is_subset(HPolytope::box({{-0.2, 0.2}, {-0.2, 0.2}}), unit_box()));
  CHECK_FALSE(is_subset(track_set(),
                        HPolytope(Matrix{{1.0, 0.0}, {-1.0, 0.0}}, Vector{0.3, 0.3})));
  // Unbounded support in a facet direction means "not contained".
  CHECK_FALSE(is_subset(track_set(), unit_box()));
  // The empty set is a subset of anything.
  CHECK(is_subset(HPolytope::empty_set(2), unit_box()));
}

TEST_CASE("scaling") {
  const HPolytope p = unit_box();
  const HPolytope same = scale(p, 1.0);
  CHECK(same.h_vector() == p.h_vector());
  const HPolytope half = scale(p, 0.5);
  CHECK(half.contains(Vector{0.5, 0.5}));
  CHECK_FALSE(half.contains(Vector{0.51, 0.0}));
  CHECK_THROWS_AS(scale(p, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(scale(p, 1.5), std::invalid_argument);
  // Origin outside the set: scaling about the origin is rejected.
  const HPolytope shifted = HPolytope::box({{1.0, 2.0}, {-1.0, 1.0}});
  CHECK_THROWS_AS(scale(shifted, 0.5), std::domain_error);
}

TEST_CASE("scaled sets are nested") {
  const HPolytope p =
      HPolytope(Matrix{{1.0, 0.2}, {-1.0, 0.1}, {0.0, 1.0}, {0.3, -1.0}},
                Vector{1.0, 0.8, 1.2, 0.9});
  for (double alpha = 0.1; alpha <= 1.0; alpha += 0.1) {
    CHECK(is_subset(scale(p, alpha), p));
  }
}

TEST_CASE("vertex enumeration of simple shapes") {
  const auto corners = vertices_2d(unit_box());
  REQUIRE(corners.size() == 4);
  for (const auto& v : corners) {
    CHECK(std::abs(v[0]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(v[1]) == doctest::Approx(1.0).epsilon(1e-12));
  }
  // Counterclockwise ordering has positive signed area.
  double area2 = 0.0;
  for (std::size_t i = 0; i < corners.size(); ++i) {
    const auto& a = corners[i];
    const auto& b = corners[(i + 1) % corners.size()];
    area2 += a[0] * b[1] - b[0] * a[1];
  }
  CHECK(area2 > 0.0);

  const HPolytope tri =
      HPolytope(Matrix{{-1.0, 0.0}, {0.0, -1.0}, {1.0, 1.0}}, Vector{0.0, 0.0, 1.0});
  const auto tv = vertices_2d(tri);
  REQUIRE(tv.size() == 3);

  CHECK_THROWS_AS(vertices_2d(track_set()), std::domain_error);
  CHECK(vertices_2d(HPolytope::empty_set(2)).empty());
}

TEST_CASE("every vertex is contained in its polytope") {
  const HPolytope p =
      HPolytope(Matrix{{1.0, 0.3}, {-0.7, 1.0}, {-1.0, -0.4}, {0.5, -1.0}},
                Vector{1.0, 0.9, 1.1, 0.8});
  const auto vs = vertices_2d(p);
  REQUIRE(vs.size() >= 3);
  for (const auto& v : vs) CHECK(p.contains(v));
}

TEST_CASE("poly file round trip preserves the set and normalizes rows") {
  const HPolytope p =
      HPolytope(Matrix{{2.0, 0.0}, {-2.0, 0.0}, {0.0, 4.0}, {0.0, -4.0}},
                Vector{0.8, 0.8, 4.0, 4.0});
  std::stringstream buf;
  write_poly(buf, p);
  const HPolytope q = read_poly(buf, "buffer");
  CHECK(is_subset(p, q));
  CHECK(is_subset(q, p));
  for (std::size_t i = 0; i < q.num_rows(); ++i) {
    CHECK(norm2(q.normal(i)) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("poly reader rejects malformed input") {
  std::stringstream missing("rows 2\n1 0 1\n-1 0 1\n");
  CHECK_THROWS_AS(read_poly(missing, "bad"), std::runtime_error);
  std::stringstream truncated("dim 2\nrows 2\n1 0 1\n");
  CHECK_THROWS_AS(read_poly(truncated, "bad"), std::runtime_error);
  std::stringstream zero_row("dim 2\nrows 1\n0 0 1\n");
  CHECK_THROWS_AS(read_poly(zero_row, "bad"), std::invalid_argument);
}

TEST_CASE("dimension cap") {
  CHECK_THROWS_AS(HPolytope(Matrix(1, 9), Vector{1.0}), std::invalid_argument);
}
