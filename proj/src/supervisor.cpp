#include "safesets/supervisor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace safesets {

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::Nominal: return "Nominal";
    case Mode::Override: return "Override";
    case Mode::Shutdown: return "Shutdown";
  }
  return "unknown";
}

const char* to_string(Zone zone) {
  switch (zone) {
    case Zone::Safe: return "Safe";
    case Zone::GrayZone: return "GrayZone";
    case Zone::Unrecoverable: return "Unrecoverable";
  }
  return "unknown";
}

void SupervisorConfig::validate() const {
  if (s_inf.dim() != o_inf.dim()) {
    throw std::invalid_argument("SupervisorConfig: set dimensions differ");
  }
  if (!is_subset(s_inf, o_inf)) {
    throw std::invalid_argument("SupervisorConfig: S-inf must be a subset of O-inf");
  }
  if (safe_point.size() != s_inf.dim() || !s_inf.contains(safe_point)) {
    throw std::invalid_argument("SupervisorConfig: safe point must lie in S-inf");
  }
  if (!(u_max > 0.0)) {
    throw std::invalid_argument("SupervisorConfig: u_max must be positive");
  }
  if (settle_tolerance.size() != s_inf.dim()) {
    throw std::invalid_argument("SupervisorConfig: settle tolerance dimension mismatch");
  }
  if (gain.k.cols() != s_inf.dim() || gain.k.rows() != 1) {
    throw std::invalid_argument("SupervisorConfig: override gain dimension mismatch");
  }
  if (settle_ticks < 1 || !(shutdown_after > 0.0) || !(dt > 0.0)) {
    throw std::invalid_argument("SupervisorConfig: invalid timing parameters");
  }
}

namespace {

double override_input(const SupervisorConfig& cfg, std::span<const double> x) {
  double u = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    u -= cfg.gain.k(0, j) * (x[j] - cfg.safe_point[j]);
  }
  return std::clamp(u, -cfg.u_max, cfg.u_max);
}

bool settled(const SupervisorConfig& cfg, std::span<const double> x) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (std::abs(x[j] - cfg.safe_point[j]) > cfg.settle_tolerance[j]) return false;
  }
  return true;
}

}  // namespace

std::pair<double, SupervisorState> supervise_step(const SupervisorConfig& cfg,
                                                  const SupervisorState& st,
                                                  std::span<const double> x,
                                                  double u_student) {
  if (x.size() != cfg.s_inf.dim()) {
    throw std::invalid_argument("supervise_step: state dimension mismatch");
  }
  SupervisorState next = st;
  switch (st.mode) {
    case Mode::Nominal: {
      if (cfg.s_inf.contains(x)) {
        return {std::clamp(u_student, -cfg.u_max, cfg.u_max), next};
      }
      next.flags += 1;
      next.mode = Mode::Override;
      break;
    }
    case Mode::Override:
      break;
    case Mode::Shutdown:
      return {0.0, next};
  }

  // Override tick (including the flag tick itself).
  next.ticks_in_override += 1;
  next.consecutive_settled = settled(cfg, x) ? next.consecutive_settled + 1 : 0;
  const double u = override_input(cfg, x);
  if (next.consecutive_settled >= cfg.settle_ticks ||
      static_cast<double>(next.ticks_in_override) * cfg.dt >= cfg.shutdown_after) {
    next.mode = Mode::Shutdown;
  }
  return {u, next};
}

Zone monitor(const SupervisorConfig& cfg, std::span<const double> x) {
  if (x.size() != cfg.s_inf.dim()) {
    throw std::invalid_argument("monitor: state dimension mismatch");
  }
  if (cfg.s_inf.contains(x)) return Zone::Safe;
  if (cfg.o_inf.contains(x)) return Zone::GrayZone;
  return Zone::Unrecoverable;
}

}  // namespace safesets
