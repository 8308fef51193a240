#pragma once

#include <complex>
#include <vector>

#include "safesets/matrix.hpp"

namespace safesets {

// Continuous-time plant x' = A x + B u.
struct ContinuousLTI {
  Matrix a;
  Matrix b;

  ContinuousLTI(Matrix a_in, Matrix b_in);
};

// Discrete-time plant x_{k+1} = A x_k + B u_k at sample period dt.
struct DiscreteLTI {
  Matrix a;
  Matrix b;
  double dt;

  DiscreteLTI(Matrix a_in, Matrix b_in, double dt_in);
};

// State feedback u = -K x.
struct FeedbackGain {
  Matrix k;  // m x n

  explicit FeedbackGain(Matrix k_in);
};

// Forward-Euler discretization: (I + dt A, dt B, dt). dt <= 0 throws.
DiscreteLTI euler_discretize(const ContinuousLTI& sys, double dt);

// Ackermann's formula for single-input pole placement. The requested poles
// must be closed under conjugation; the synthesized gain is verified against
// the desired characteristic coefficients to 1e-6 before it is returned.
FeedbackGain place_poles(const DiscreteLTI& sys,
                         const std::vector<std::complex<double>>& poles);
FeedbackGain place_poles(const DiscreteLTI& sys, const std::vector<double>& poles);

// (A - B K, B, dt); B is retained for disturbance and override analysis.
DiscreteLTI closed_loop(const DiscreteLTI& sys, const FeedbackGain& gain);

// True iff every eigenvalue modulus is below 1 - 1e-9. Near the unit circle
// (within 1e-6) the verdict is cross-checked against ||A^200||_inf < 1.
bool is_stable(const Matrix& a);

// Expand prod (z - p_i) into monic real coefficients [1, c1, ..., cn].
std::vector<double> expand_poles(const std::vector<std::complex<double>>& poles);

}  // namespace safesets
