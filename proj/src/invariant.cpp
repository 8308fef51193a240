#include "safesets/invariant.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace safesets {

namespace {

constexpr double kMarginTol = 1e-9;

double input_column_weight(const Vector& normal, const Matrix& b) {
  // Independent saturated inputs: worst case adds u_max * sum_j |q^T B_j|.
  double w = 0.0;
  for (std::size_t j = 0; j < b.cols(); ++j) {
    double qb = 0.0;
    for (std::size_t i = 0; i < b.rows(); ++i) qb += normal[i] * b(i, j);
    w += std::abs(qb);
  }
  return w;
}

}  // namespace

InvariantResult compute_max_invariant(const HPolytope& x_set, const Matrix& a_cl,
                                      long max_iter, const InvariantProgress& progress) {
  if (a_cl.rows() != x_set.dim()) {
    throw std::invalid_argument("compute_max_invariant: map dimension mismatch");
  }
  if (!is_stable(a_cl)) {
    throw std::domain_error(
        "compute_max_invariant: closed-loop map is not strictly stable");
  }
  if (max_iter < 0) {
    throw std::invalid_argument("compute_max_invariant: max_iter must be nonnegative");
  }

  HPolytope current = x_set;
  for (long iter = 1; iter <= max_iter; ++iter) {
    HPolytope next = intersect(pre_set(current, a_cl), current);
    const bool settled = is_subset(current, next) && is_subset(next, current);
    current = std::move(next);
    if (progress) progress(iter, current);
    if (settled) {
      return InvariantResult{std::move(current), iter, true};
    }
  }
  return InvariantResult{std::move(current), max_iter, false};
}

std::pair<bool, Vector> one_step_safe(const HPolytope& candidate,
                                      const HPolytope& o_inf,
                                      const DiscreteLTI& sys, double u_max) {
  if (candidate.dim() != o_inf.dim() || sys.a.rows() != o_inf.dim()) {
    throw std::invalid_argument("one_step_safe: dimension mismatch");
  }
  if (u_max < 0.0) {
    throw std::invalid_argument("one_step_safe: u_max must be nonnegative");
  }

  const std::size_t m = o_inf.num_rows();
  Vector margins(m, 0.0);
  bool safe = true;
  for (std::size_t i = 0; i < m; ++i) {
    const Vector q = o_inf.normal(i);
    // Objective q^T A as a row vector acting on x.
    Vector qa(sys.a.cols(), 0.0);
    for (std::size_t j = 0; j < sys.a.cols(); ++j) {
      double acc = 0.0;
      for (std::size_t r = 0; r < sys.a.rows(); ++r) acc += q[r] * sys.a(r, j);
      qa[j] = acc;
    }
    const LPResult lp = candidate.support(qa);
    if (lp.status == LPStatus::Unbounded) {
      margins[i] = -std::numeric_limits<double>::infinity();
      safe = false;
      continue;
    }
    if (lp.status == LPStatus::Infeasible) {
      // Empty candidate: vacuously safe on this facet.
      margins[i] = std::numeric_limits<double>::infinity();
      continue;
    }
    margins[i] = o_inf.offset(i) - lp.optimum - u_max * input_column_weight(q, sys.b);
    if (margins[i] < -kMarginTol) safe = false;
  }
  return {safe, margins};
}

AttenuationResult attenuate(const HPolytope& o_inf, const DiscreteLTI& sys,
                            double u_max) {
  if (sys.a.rows() != o_inf.dim()) {
    throw std::invalid_argument("attenuate: dimension mismatch");
  }
  if (u_max < 0.0) {
    throw std::invalid_argument("attenuate: u_max must be nonnegative");
  }
  // scale() itself revalidates, but fail early with a precise message.
  {
    const HPolytope norm = o_inf.normalized();
    for (double off : norm.h_vector()) {
      if (!(off > 0.0)) {
        throw std::domain_error("attenuate: origin is not interior to the set");
      }
    }
  }

  const std::size_t m = o_inf.num_rows();
  Vector numerators(m, 0.0);
  Vector supports(m, 0.0);
  double alpha = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Vector q = o_inf.normal(i);
    numerators[i] = o_inf.offset(i) - u_max * input_column_weight(q, sys.b);
    if (numerators[i] < 1e-15) {
      throw AttenuationInfeasible(
          "attenuate: no attenuation can absorb one worst-case step (u_max too "
          "large for the set)");
    }
    Vector qa(sys.a.cols(), 0.0);
    for (std::size_t j = 0; j < sys.a.cols(); ++j) {
      double acc = 0.0;
      for (std::size_t r = 0; r < sys.a.rows(); ++r) acc += q[r] * sys.a(r, j);
      qa[j] = acc;
    }
    const LPResult lp = o_inf.support(qa);
    if (lp.status != LPStatus::Optimal) {
      throw std::domain_error("attenuate: facet support is unbounded; the set cannot be attenuated");
    }
    supports[i] = lp.optimum;
    if (supports[i] > 1e-12) {
      alpha = std::min(alpha, numerators[i] / supports[i]);
    }
  }
  // LP roundoff can leave ratios infinitesimally below 1 for sets that are
  // already invariant; snap those to the clip value.
  if (alpha > 1.0 - 1e-9) alpha = 1.0;

  // Cross-validate the closed form against a bisection of the one-step check.
  double lo = 0.0, hi = 1.0;
  if (one_step_safe(scale(o_inf, 1.0), o_inf, sys, u_max).first) {
    lo = 1.0;
  } else {
    while (hi - lo > 1e-7) {
      const double mid = 0.5 * (lo + hi);
      if (one_step_safe(scale(o_inf, mid), o_inf, sys, u_max).first) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
  }
  if (std::abs(lo - alpha) > 1e-5) {
    throw std::runtime_error("attenuate: closed-form factor disagrees with bisection");
  }

  AttenuationResult res{scale(o_inf, alpha), alpha, Vector(m, 0.0)};
  for (std::size_t i = 0; i < m; ++i) {
    res.facet_margins[i] = numerators[i] - alpha * supports[i];
  }
  return res;
}

}  // namespace safesets
