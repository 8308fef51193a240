#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "safesets/plant.hpp"

namespace safesets {

enum class ControllerKind { StepPD, UnstableGain, BangBang, SwingUpBalance };

ControllerKind controller_kind_from_string(const std::string& name);

// Parameters for the scripted "student" controllers. Only the fields of the
// selected kind matter; noise_amp adds a seeded uniform dither to any kind.
struct ControllerSpec {
  ControllerKind kind = ControllerKind::StepPD;

  // StepPD: u = kp (ref - p) - kd pd
  double ref = 0.0;
  double kp = 0.0;
  double kd = 0.0;

  // UnstableGain: u = gain * p
  double gain = 0.0;

  // BangBang: +/- amplitude square wave of the given period
  double amplitude = 0.0;
  double period = 1.0;  // s

  // SwingUpBalance: energy pumping, then a pole-placed 4-state balance law.
  double energy_gain = 0.0;
  double swing_clamp = 12.0;   // |u| bound during the pumping phase
  double catch_angle = 0.3;    // rad from upright where the balance law takes over
  double balance_ref = 0.0;    // cart position setpoint while balancing
  std::array<double, 4> balance_poles = {0.984, 0.982, 0.98, 0.978};

  double noise_amp = 0.0;
};

// One scripted student controller instance. SwingUpBalance synthesizes its
// 4-state balance gain from the plant model at construction; the noise
// channel carries its own deterministic generator.
class StudentController {
 public:
  StudentController(const ControllerSpec& spec, std::uint64_t seed,
                    const CartPendulumModel& model, double dt);

  // state is (p, pd) for the 2D plant or (p, pd, theta, thd) for the 4D one.
  double compute(std::span<const double> state, double time);

  const ControllerSpec& spec() const { return spec_; }

 private:
  double noise();

  ControllerSpec spec_;
  CartPendulumModel model_;
  std::uint64_t rng_state_;
  std::optional<FeedbackGain> balance_gain_;
};

}  // namespace safesets
