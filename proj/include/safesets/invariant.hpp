#pragma once

#include <functional>
#include <utility>

#include "safesets/lti.hpp"
#include "safesets/polytope.hpp"

namespace safesets {

struct InvariantResult {
  HPolytope o_inf;
  long iterations = 0;
  bool converged = false;
};

struct AttenuationResult {
  HPolytope s_inf;
  double alpha = 1.0;          // attenuation factor in (0, 1]
  Vector facet_margins;        // worst-case slack per facet of the source set
};

// Thrown when no scaling of the set can absorb one worst-case input step.
struct AttenuationInfeasible : std::domain_error {
  using std::domain_error::domain_error;
};

using InvariantProgress = std::function<void(long iteration, const HPolytope& current)>;

// Maximal positive invariant subset of x_set under the stable autonomous map
// a_cl. Iterates O <- prune(pre(O) ∩ O) from O = X and stops when the set
// reproduces itself (mutual containment) or after max_iter iterations.
InvariantResult compute_max_invariant(const HPolytope& x_set, const Matrix& a_cl,
                                      long max_iter = 500,
                                      const InvariantProgress& progress = {});

// Worst-case one-step containment: for every facet (q, r) of o_inf,
//   max_{x in candidate} q.(A x) + u_max |q.B| <= r + 1e-9,
// with (A, B) taken from sys (the caller chooses open- or closed-loop).
// Returns the verdict plus the per-facet slack; an unbounded facet LP yields
// false with a -inf margin.
std::pair<bool, Vector> one_step_safe(const HPolytope& candidate,
                                      const HPolytope& o_inf,
                                      const DiscreteLTI& sys, double u_max);

// Largest alpha in (0, 1] such that scale(o_inf, alpha) is one-step safe,
// computed facet-wise in closed form and cross-checked against a bisection
// of one_step_safe to 1e-6. Throws AttenuationInfeasible when u_max is too
// large for the set.
AttenuationResult attenuate(const HPolytope& o_inf, const DiscreteLTI& sys,
                            double u_max);

}  // namespace safesets
