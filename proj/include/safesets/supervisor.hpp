#pragma once

#include <span>
#include <utility>

#include "safesets/invariant.hpp"
#include "safesets/lti.hpp"
#include "safesets/polytope.hpp"

namespace safesets {

enum class Mode { Nominal, Override, Shutdown };
enum class Zone { Safe, GrayZone, Unrecoverable };

const char* to_string(Mode mode);
const char* to_string(Zone zone);

// Runtime safety layer configuration. The override law u = -K (x - safe_point)
// is the same certified feedback the sets were computed for.
struct SupervisorConfig {
  HPolytope s_inf;
  HPolytope o_inf;
  FeedbackGain gain;
  Vector safe_point;
  double u_max = 12.0;
  Vector settle_tolerance;  // componentwise |x - safe_point| bound
  long settle_ticks = 250;
  double shutdown_after = 5.0;  // s spent in Override before forced shutdown
  double dt = 0.002;

  void validate() const;
};

// Mode machine state. Transitions are one-way:
// Nominal -> Override -> Shutdown.
struct SupervisorState {
  Mode mode = Mode::Nominal;
  long flags = 0;
  long ticks_in_override = 0;
  long consecutive_settled = 0;
};

// One supervisor tick: returns the input actually applied to the plant and
// the updated machine state.
std::pair<double, SupervisorState> supervise_step(const SupervisorConfig& cfg,
                                                  const SupervisorState& st,
                                                  std::span<const double> x,
                                                  double u_student);

// Diagnostic classification of a measured state against the two sets.
Zone monitor(const SupervisorConfig& cfg, std::span<const double> x);

}  // namespace safesets
