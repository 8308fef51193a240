#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "safesets/linprog.hpp"
#include "safesets/matrix.hpp"

namespace safesets {

// Convex polyhedron in halfspace representation {x : H x <= h}. May be
// unbounded (the cart constraint set leaves velocity free) and may be empty;
// emptiness is detected by LP feasibility, never signalled as an error.
class HPolytope {
 public:
  HPolytope(Matrix h_matrix, Vector h_vector);

  // Axis-aligned box given per-axis [lo, hi] bounds.
  static HPolytope box(const std::vector<std::array<double, 2>>& bounds);
  // A pair of infeasible rows in the requested dimension.
  static HPolytope empty_set(std::size_t dim);

  std::size_t dim() const { return h_matrix_.cols(); }
  std::size_t num_rows() const { return h_matrix_.rows(); }
  const Matrix& h_matrix() const { return h_matrix_; }
  const Vector& h_vector() const { return h_vector_; }
  Vector normal(std::size_t i) const { return h_matrix_.row(i); }
  double offset(std::size_t i) const { return h_vector_[i]; }

  // Same set with every facet row scaled to unit Euclidean norm.
  HPolytope normalized() const;

  // Boundary-inclusive membership: H x <= h + 1e-9 componentwise.
  bool contains(std::span<const double> x, double tol = 1e-9) const;

  bool is_empty() const;

  // Support LP in the given direction.
  LPResult support(const Vector& direction) const;

 private:
  Matrix h_matrix_;
  Vector h_vector_;
};

LPResult lp_maximize(const Vector& objective, const HPolytope& constraints);

// Concatenates the rows of both sets and prunes redundant ones. An empty
// intersection is returned as a (flagged) empty polytope.
HPolytope intersect(const HPolytope& p, const HPolytope& q);

// Standard LP redundancy pruning: a row is kept iff maximizing its normal
// over the remaining rows exceeds its offset by more than 1e-7. Rows are
// normalized first so the tolerance is scale-invariant.
HPolytope remove_redundancy(const HPolytope& p);

// Preimage {x : H (A x) <= h} under the linear map A, i.e. rows (H A, h).
// No pruning; callers intersect with the current set and prune there.
HPolytope pre_set(const HPolytope& p, const Matrix& a);

// True iff p is contained in q (per-facet support test, tolerance 1e-7 on
// normalized support values). An empty p is a subset of anything.
bool is_subset(const HPolytope& p, const HPolytope& q);

// {alpha x : x in p}, valid only when the origin is interior to p.
HPolytope scale(const HPolytope& p, double alpha);

// Counterclockwise vertex list of a bounded 2D polytope. Unbounded input
// throws; an empty set yields an empty list.
std::vector<std::array<double, 2>> vertices_2d(const HPolytope& p);

// ".poly" text format: "dim n" / "rows m" / m rows of n+1 numbers.
HPolytope read_poly(std::istream& in, const std::string& origin = "<stream>");
HPolytope read_poly_file(const std::filesystem::path& path);
void write_poly(std::ostream& out, const HPolytope& p);
void write_poly_file(const std::filesystem::path& path, const HPolytope& p);

}  // namespace safesets
