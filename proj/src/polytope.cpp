#include "safesets/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace safesets {

namespace {

constexpr double kSupportTol = 1e-7;
constexpr std::size_t kMaxDim = 8;

double row_norm(const Matrix& h, std::size_t i) {
  double s = 0.0;
  for (std::size_t j = 0; j < h.cols(); ++j) s += h(i, j) * h(i, j);
  return std::sqrt(s);
}

HPolytope from_rows(std::size_t dim, const std::vector<Vector>& normals,
                    const std::vector<double>& offsets) {
  Matrix h(normals.size(), dim);
  for (std::size_t i = 0; i < normals.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) h(i, j) = normals[i][j];
  return HPolytope(std::move(h), Vector(offsets));
}

}  // namespace

HPolytope::HPolytope(Matrix h_matrix, Vector h_vector)
    : h_matrix_(std::move(h_matrix)), h_vector_(std::move(h_vector)) {
  if (h_vector_.size() != h_matrix_.rows()) {
    throw std::invalid_argument("HPolytope: offset count differs from row count");
  }
  if (h_matrix_.cols() > kMaxDim) {
    throw std::invalid_argument("HPolytope: dimension capped at 8");
  }
  for (double v : h_vector_) {
    if (!std::isfinite(v)) throw std::invalid_argument("HPolytope: offsets must be finite");
  }
  for (std::size_t i = 0; i < h_matrix_.rows(); ++i) {
    if (row_norm(h_matrix_, i) < 1e-14) {
      throw std::invalid_argument("HPolytope: all-zero facet normal");
    }
  }
}

HPolytope HPolytope::box(const std::vector<std::array<double, 2>>& bounds) {
  const std::size_t n = bounds.size();
  Matrix h(2 * n, n);
  Vector off(2 * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    h(2 * i, i) = 1.0;
    off[2 * i] = bounds[i][1];
    h(2 * i + 1, i) = -1.0;
    off[2 * i + 1] = -bounds[i][0];
  }
  return HPolytope(std::move(h), std::move(off));
}

HPolytope HPolytope::empty_set(std::size_t dim) {
  Matrix h(2, dim);
  h(0, 0) = 1.0;
  h(1, 0) = -1.0;
  return HPolytope(std::move(h), Vector{-1.0, -1.0});
}

HPolytope HPolytope::normalized() const {
  Matrix h = h_matrix_;
  Vector off = h_vector_;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    const double nrm = row_norm(h, i);
    for (std::size_t j = 0; j < h.cols(); ++j) h(i, j) /= nrm;
    off[i] /= nrm;
  }
  return HPolytope(std::move(h), std::move(off));
}

bool HPolytope::contains(std::span<const double> x, double tol) const {
  if (x.size() != dim()) {
    throw std::invalid_argument("HPolytope::contains: dimension mismatch");
  }
  for (std::size_t i = 0; i < num_rows(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < dim(); ++j) acc += h_matrix_(i, j) * x[j];
    if (acc > h_vector_[i] + tol) return false;
  }
  return true;
}

bool HPolytope::is_empty() const {
  return lp_maximize(Vector(dim(), 0.0), h_matrix_, h_vector_).status ==
         LPStatus::Infeasible;
}

LPResult HPolytope::support(const Vector& direction) const {
  return lp_maximize(direction, h_matrix_, h_vector_);
}

LPResult lp_maximize(const Vector& objective, const HPolytope& constraints) {
  return lp_maximize(objective, constraints.h_matrix(), constraints.h_vector());
}

HPolytope intersect(const HPolytope& p, const HPolytope& q) {
  if (p.dim() != q.dim()) {
    throw std::invalid_argument("intersect: dimension mismatch");
  }
  Matrix h(p.num_rows() + q.num_rows(), p.dim());
  Vector off(p.num_rows() + q.num_rows(), 0.0);
  for (std::size_t i = 0; i < p.num_rows(); ++i) {
    for (std::size_t j = 0; j < p.dim(); ++j) h(i, j) = p.h_matrix()(i, j);
    off[i] = p.offset(i);
  }
  for (std::size_t i = 0; i < q.num_rows(); ++i) {
    for (std::size_t j = 0; j < q.dim(); ++j) h(p.num_rows() + i, j) = q.h_matrix()(i, j);
    off[p.num_rows() + i] = q.offset(i);
  }
  return remove_redundancy(HPolytope(std::move(h), std::move(off)));
}

HPolytope remove_redundancy(const HPolytope& p) {
  const HPolytope norm = p.normalized();
  const std::size_t m = norm.num_rows();
  const std::size_t n = norm.dim();
  std::vector<bool> active(m, true);

  for (std::size_t i = 0; i < m; ++i) {
    std::size_t others = 0;
    for (std::size_t k = 0; k < m; ++k) others += (active[k] && k != i) ? 1 : 0;
    if (others == 0) break;  // last remaining row always defines the set

    Matrix rest(others, n);
    Vector rest_off(others, 0.0);
    std::size_t r = 0;
    for (std::size_t k = 0; k < m; ++k) {
      if (!active[k] || k == i) continue;
      for (std::size_t j = 0; j < n; ++j) rest(r, j) = norm.h_matrix()(k, j);
      rest_off[r] = norm.offset(k);
      ++r;
    }
    const LPResult lp = lp_maximize(norm.normal(i), rest, rest_off);
    if (lp.status == LPStatus::Infeasible) {
      // The set is empty with or without row i; keep the remaining rows as a
      // flagged-empty polytope.
      break;
    }
    if (lp.status == LPStatus::Optimal && lp.optimum <= norm.offset(i) + kSupportTol) {
      active[i] = false;
    }
  }

  std::vector<Vector> normals;
  std::vector<double> offsets;
  for (std::size_t i = 0; i < m; ++i) {
    if (!active[i]) continue;
    normals.push_back(norm.normal(i));
    offsets.push_back(norm.offset(i));
  }
  return from_rows(n, normals, offsets);
}

HPolytope pre_set(const HPolytope& p, const Matrix& a) {
  if (!a.is_square() || a.rows() != p.dim()) {
    throw std::invalid_argument("pre_set: map dimension mismatch");
  }
  const Matrix ha = p.h_matrix() * a;
  std::vector<Vector> normals;
  std::vector<double> offsets;
  bool infeasible_degenerate = false;
  for (std::size_t i = 0; i < ha.rows(); ++i) {
    double nrm = 0.0;
    for (std::size_t j = 0; j < ha.cols(); ++j) nrm += ha(i, j) * ha(i, j);
    if (std::sqrt(nrm) < 1e-14) {
      // Row collapsed under the map: 0 <= h is either vacuous or infeasible.
      if (p.offset(i) < 0.0) infeasible_degenerate = true;
      continue;
    }
    normals.push_back(ha.row(i));
    offsets.push_back(p.offset(i));
  }
  if (infeasible_degenerate || normals.empty()) {
    return infeasible_degenerate ? HPolytope::empty_set(p.dim())
                                 : HPolytope::box(std::vector<std::array<double, 2>>(
                                       p.dim(), {-1e12, 1e12}));
  }
  return from_rows(p.dim(), normals, offsets);
}

bool is_subset(const HPolytope& p, const HPolytope& q) {
  if (p.dim() != q.dim()) {
    throw std::invalid_argument("is_subset: dimension mismatch");
  }
  const HPolytope qn = q.normalized();
  for (std::size_t i = 0; i < qn.num_rows(); ++i) {
    const LPResult lp = p.support(qn.normal(i));
    if (lp.status == LPStatus::Infeasible) return true;  // p empty
    if (lp.status == LPStatus::Unbounded) return false;
    if (lp.optimum > qn.offset(i) + kSupportTol) return false;
  }
  return true;
}

HPolytope scale(const HPolytope& p, double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw std::invalid_argument("scale: alpha must lie in (0, 1]");
  }
  const HPolytope norm = p.normalized();
  for (double off : norm.h_vector()) {
    if (!(off > 0.0)) {
      throw std::domain_error("scale: origin is not interior to the set");
    }
  }
  Vector off = p.h_vector();
  for (double& v : off) v *= alpha;
  return HPolytope(p.h_matrix(), std::move(off));
}

std::vector<std::array<double, 2>> vertices_2d(const HPolytope& p) {
  if (p.dim() != 2) {
    throw std::invalid_argument("vertices_2d: set must be two-dimensional");
  }
  if (p.is_empty()) return {};
  for (const Vector& dir : {Vector{1, 0}, Vector{-1, 0}, Vector{0, 1}, Vector{0, -1}}) {
    if (p.support(dir).status != LPStatus::Optimal) {
      throw std::domain_error("vertices_2d: set is unbounded");
    }
  }

  const HPolytope norm = p.normalized();
  const std::size_t m = norm.num_rows();
  std::vector<std::array<double, 2>> pts;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = i + 1; k < m; ++k) {
      const double a11 = norm.h_matrix()(i, 0), a12 = norm.h_matrix()(i, 1);
      const double a21 = norm.h_matrix()(k, 0), a22 = norm.h_matrix()(k, 1);
      const double det = a11 * a22 - a12 * a21;
      if (std::abs(det) < 1e-12) continue;
      const double b1 = norm.offset(i), b2 = norm.offset(k);
      const std::array<double, 2> v = {(b1 * a22 - a12 * b2) / det,
                                       (a11 * b2 - b1 * a21) / det};
      if (norm.contains(v, 1e-7)) pts.push_back(v);
    }
  }
  // Merge duplicates within 1e-8.
  std::vector<std::array<double, 2>> merged;
  for (const auto& v : pts) {
    bool dup = false;
    for (const auto& w : merged) {
      if (std::abs(v[0] - w[0]) <= 1e-8 && std::abs(v[1] - w[1]) <= 1e-8) {
        dup = true;
        break;
      }
    }
    if (!dup) merged.push_back(v);
  }
  if (merged.empty()) return merged;

  double cx = 0.0, cy = 0.0;
  for (const auto& v : merged) {
    cx += v[0];
    cy += v[1];
  }
  cx /= static_cast<double>(merged.size());
  cy /= static_cast<double>(merged.size());
  std::sort(merged.begin(), merged.end(), [&](const auto& a, const auto& b) {
    return std::atan2(a[1] - cy, a[0] - cx) < std::atan2(b[1] - cy, b[0] - cx);
  });
  return merged;
}

HPolytope read_poly(std::istream& in, const std::string& origin) {
  auto fail = [&](const std::string& what) -> void {
    throw std::runtime_error(origin + ": " + what);
  };
  std::string key;
  std::size_t n = 0, m = 0;
  if (!(in >> key >> n) || key != "dim" || n < 1) fail("expected 'dim <n>' header");
  if (!(in >> key >> m) || key != "rows" || m < 1) fail("expected 'rows <m>' header");
  Matrix h(m, n);
  Vector off(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!(in >> h(i, j))) fail("truncated facet row");
    }
    if (!(in >> off[i])) fail("truncated facet row");
  }
  return HPolytope(std::move(h), std::move(off));
}

HPolytope read_poly_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open polytope file: " + path.string());
  return read_poly(in, path.string());
}

void write_poly(std::ostream& out, const HPolytope& p) {
  const HPolytope norm = p.normalized();
  out << "dim " << norm.dim() << "\n";
  out << "rows " << norm.num_rows() << "\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < norm.num_rows(); ++i) {
    for (std::size_t j = 0; j < norm.dim(); ++j) out << norm.h_matrix()(i, j) << " ";
    out << norm.offset(i) << "\n";
  }
}

void write_poly_file(const std::filesystem::path& path, const HPolytope& p) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write polytope file: " + path.string());
  write_poly(out, p);
}

}  // namespace safesets
