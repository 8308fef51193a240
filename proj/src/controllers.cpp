#include "safesets/controllers.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace safesets {

namespace {

// Sign with a positive kick at zero so the pumping law can leave rest.
double signum(double v) { return v < 0.0 ? -1.0 : 1.0; }

double wrap_pi(double angle) {
  const double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(angle + std::numbers::pi, two_pi);
  if (a < 0.0) a += two_pi;
  return a - std::numbers::pi;
}

}  // namespace

ControllerKind controller_kind_from_string(const std::string& name) {
  if (name == "step_pd") return ControllerKind::StepPD;
  if (name == "unstable_gain") return ControllerKind::UnstableGain;
  if (name == "bang_bang") return ControllerKind::BangBang;
  if (name == "swing_up_balance") return ControllerKind::SwingUpBalance;
  throw std::invalid_argument("unknown controller kind: " + name);
}

StudentController::StudentController(const ControllerSpec& spec, std::uint64_t seed,
                                     const CartPendulumModel& model, double dt)
    : spec_(spec), model_(model), rng_state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {
  if (spec_.kind == ControllerKind::SwingUpBalance) {
    const DiscreteLTI lin = euler_discretize(model_.linearize_upright(), dt);
    std::vector<double> poles(spec_.balance_poles.begin(), spec_.balance_poles.end());
    balance_gain_ = place_poles(lin, poles);
  }
}

double StudentController::noise() {
  // xorshift64*; uniform in [-1, 1).
  rng_state_ ^= rng_state_ >> 12;
  rng_state_ ^= rng_state_ << 25;
  rng_state_ ^= rng_state_ >> 27;
  const std::uint64_t z = rng_state_ * 0x2545F4914F6CDD1DULL;
  return 2.0 * (static_cast<double>(z >> 11) * 0x1.0p-53) - 1.0;
}

double StudentController::compute(std::span<const double> state, double time) {
  double u = 0.0;
  switch (spec_.kind) {
    case ControllerKind::StepPD:
      u = spec_.kp * (spec_.ref - state[0]) - spec_.kd * state[1];
      break;
    case ControllerKind::UnstableGain:
      u = spec_.gain * state[0];
      break;
    case ControllerKind::BangBang: {
      const double phase = std::fmod(time, spec_.period);
      u = (phase < 0.5 * spec_.period) ? spec_.amplitude : -spec_.amplitude;
      break;
    }
    case ControllerKind::SwingUpBalance: {
      if (state.size() != 4) {
        throw std::invalid_argument("swing_up_balance needs the 4D cart-pendulum state");
      }
      const double theta = state[2], thd = state[3];
      const double upright_err = wrap_pi(theta - std::numbers::pi);
      if (std::abs(upright_err) > spec_.catch_angle) {
        const CartPendulumState s{state[0], state[1], theta, thd};
        const double e = pendulum_energy(s, model_);
        const double e_up = model_.pendulum_mass * model_.gravity * model_.length;
        double pump = spec_.energy_gain * signum(thd * std::cos(theta)) * (e_up - e);
        pump = std::clamp(pump, -spec_.swing_clamp, spec_.swing_clamp);
        u = pump;
      } else {
        const Matrix& k = balance_gain_->k;
        u = -(k(0, 0) * (state[0] - spec_.balance_ref) + k(0, 1) * state[1] +
              k(0, 2) * upright_err + k(0, 3) * thd);
      }
      break;
    }
  }
  if (spec_.noise_amp != 0.0) u += spec_.noise_amp * noise();
  return u;
}

}  // namespace safesets
