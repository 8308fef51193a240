#include "safesets/linprog.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace safesets {

namespace {

constexpr double kTol = 1e-9;

// Full-tableau simplex over the standard form
//   y = [x+ (n) | x- (n) | slack (m) | artificial (k)] >= 0,
// rows pre-scaled so every right-hand side is nonnegative.
struct Tableau {
  std::size_t n_struct = 0;  // 2n structural columns
  std::size_t n_slack = 0;
  std::size_t n_art = 0;
  std::vector<std::vector<double>> rows;  // m rows, n_cols + 1 (rhs last)
  std::vector<double> zrow;               // reduced-cost row (z - c), length n_cols
  std::vector<std::size_t> basis;         // basic column per row
  std::vector<bool> banned;               // columns barred from entering
  std::vector<bool> dead;                 // redundant rows ignored after phase 1

  std::size_t n_cols() const { return n_struct + n_slack + n_art; }
  double& rhs(std::size_t i) { return rows[i].back(); }

  void pivot(std::size_t pr, std::size_t pc) {
    auto& prow = rows[pr];
    const double pv = prow[pc];
    for (double& v : prow) v /= pv;
    prow[pc] = 1.0;  // kill roundoff on the pivot itself
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == pr || dead[i]) continue;
      const double f = rows[i][pc];
      if (f == 0.0) continue;
      auto& row = rows[i];
      for (std::size_t j = 0; j < row.size(); ++j) row[j] -= f * prow[j];
      row[pc] = 0.0;
      if (row.back() > -1e-12 && row.back() < 0.0) row.back() = 0.0;
    }
    const double fz = zrow[pc];
    if (fz != 0.0) {
      for (std::size_t j = 0; j < zrow.size(); ++j) zrow[j] -= fz * prow[j];
      zrow[pc] = 0.0;
    }
    basis[pr] = pc;
  }

  // Bland's rule: entering = lowest-index column with negative reduced cost;
  // leaving = min ratio, ties broken by lowest basic column index.
  // Returns Optimal / Unbounded.
  LPStatus run() {
    const std::size_t cols = n_cols();
    for (long guard = 0; guard < 200000; ++guard) {
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols; ++j) {
        if (!banned[j] && zrow[j] < -kTol) {
          enter = j;
          break;
        }
      }
      if (enter == cols) return LPStatus::Optimal;

      std::size_t leave = rows.size();
      double best_ratio = 0.0;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (dead[i]) continue;
        const double a = rows[i][enter];
        if (a <= kTol) continue;
        const double ratio = rows[i].back() / a;
        if (leave == rows.size() || ratio < best_ratio - 1e-12 ||
            (std::abs(ratio - best_ratio) <= 1e-12 && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == rows.size()) return LPStatus::Unbounded;
      pivot(leave, enter);
    }
    throw std::runtime_error("lp_maximize: pivot limit exceeded");
  }

  // Installs the reduced-cost row for objective coefficients c (maximize).
  void set_objective(const std::vector<double>& c) {
    const std::size_t cols = n_cols();
    zrow.assign(cols, 0.0);
    for (std::size_t j = 0; j < cols; ++j) zrow[j] = -c[j];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (dead[i]) continue;
      const double cb = c[basis[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) zrow[j] += cb * rows[i][j];
    }
  }

  double objective_value(const std::vector<double>& c) const {
    double v = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!dead[i]) v += c[basis[i]] * rows[i].back();
    }
    return v;
  }
};

}  // namespace

LPResult lp_maximize(const Vector& objective, const Matrix& h_matrix,
                     const Vector& h_vector) {
  const std::size_t n = objective.size();
  const std::size_t m = h_matrix.rows();
  if (h_matrix.cols() != n) {
    throw std::invalid_argument("lp_maximize: objective length differs from constraint dimension");
  }
  if (h_vector.size() != m) {
    throw std::invalid_argument("lp_maximize: offset length differs from row count");
  }

  Tableau t;
  t.n_struct = 2 * n;
  t.n_slack = m;
  std::vector<std::size_t> art_rows;
  for (std::size_t i = 0; i < m; ++i) {
    if (h_vector[i] < 0.0) art_rows.push_back(i);
  }
  t.n_art = art_rows.size();

  const std::size_t cols = t.n_cols();
  t.rows.assign(m, std::vector<double>(cols + 1, 0.0));
  t.basis.assign(m, 0);
  t.banned.assign(cols, false);
  t.dead.assign(m, false);

  std::size_t next_art = t.n_struct + t.n_slack;
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = (h_vector[i] < 0.0) ? -1.0 : 1.0;
    auto& row = t.rows[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double g = sign * h_matrix(i, j);
      row[j] = g;
      row[n + j] = -g;
    }
    row[t.n_struct + i] = sign;  // slack
    row.back() = sign * h_vector[i];
    if (sign < 0.0) {
      row[next_art] = 1.0;
      t.basis[i] = next_art;
      ++next_art;
    } else {
      t.basis[i] = t.n_struct + i;
    }
  }

  if (t.n_art > 0) {
    std::vector<double> phase1(cols, 0.0);
    for (std::size_t j = t.n_struct + t.n_slack; j < cols; ++j) phase1[j] = -1.0;
    t.set_objective(phase1);
    if (t.run() != LPStatus::Optimal) {
      throw std::runtime_error("lp_maximize: phase-1 cannot be unbounded");
    }
    if (t.objective_value(phase1) < -1e-7) {
      return {LPStatus::Infeasible, 0.0, {}};
    }
    // Drive remaining (zero-valued) artificials out of the basis; rows that
    // cannot be pivoted are redundant and retired.
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis[i] < t.n_struct + t.n_slack) continue;
      std::size_t pc = cols;
      for (std::size_t j = 0; j < t.n_struct + t.n_slack; ++j) {
        if (std::abs(t.rows[i][j]) > 1e-9) {
          pc = j;
          break;
        }
      }
      if (pc == cols) {
        t.dead[i] = true;
      } else {
        t.pivot(i, pc);
      }
    }
    for (std::size_t j = t.n_struct + t.n_slack; j < cols; ++j) t.banned[j] = true;
  }

  std::vector<double> phase2(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    phase2[j] = objective[j];
    phase2[n + j] = -objective[j];
  }
  t.set_objective(phase2);
  const LPStatus status = t.run();
  if (status == LPStatus::Unbounded) {
    return {LPStatus::Unbounded, 0.0, {}};
  }

  Vector x(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (t.dead[i]) continue;
    const std::size_t b = t.basis[i];
    if (b < n) {
      x[b] += t.rows[i].back();
    } else if (b < 2 * n) {
      x[b - n] -= t.rows[i].back();
    }
  }
  LPResult res;
  res.status = LPStatus::Optimal;
  res.witness = x;
  res.optimum = dot(objective, x);
  return res;
}

const char* to_string(LPStatus status) {
  switch (status) {
    case LPStatus::Optimal: return "optimal";
    case LPStatus::Infeasible: return "infeasible";
    case LPStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

}  // namespace safesets
