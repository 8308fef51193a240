#pragma once

#include "safesets/matrix.hpp"

namespace safesets {

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  double optimum = 0.0;  // valid only when Optimal
  Vector witness;        // maximizer, valid only when Optimal
};

// Maximize objective . x subject to h_matrix x <= h_vector, x free in sign.
// Dense two-phase simplex with Bland's anti-cycling rule. Feasibility and
// optimality tolerance is 1e-9.
LPResult lp_maximize(const Vector& objective, const Matrix& h_matrix,
                     const Vector& h_vector);

const char* to_string(LPStatus status);

}  // namespace safesets
