#pragma once

#include <cstdint>

#include "safesets/lti.hpp"

namespace safesets {

// Cart model of the lab track: pdd = -friction * pd + input_gain * u.
struct CartModel {
  double friction = 7.2;    // 1/s
  double input_gain = 1.6;  // (m/s^2) per input unit

  ContinuousLTI continuous() const;
  DiscreteLTI discretize(double dt) const;
};

struct CartState {
  double position = 0.0;  // m
  double velocity = 0.0;  // m/s
};

// Cart-pendulum parameters. The pendulum is a point mass on a massless rod;
// with pendulum_mass -> 0 the cart subsystem reduces to CartModel exactly.
struct CartPendulumModel {
  CartModel cart;
  double cart_mass = 0.5;        // kg
  double pendulum_mass = 0.2;    // kg
  double length = 0.3;           // m, pivot to bob
  double pivot_damping = 0.005;  // N m s
  double gravity = 9.81;         // m/s^2
  int substeps = 10;             // RK4 sub-steps per supervisor tick

  // Linearization about the upright equilibrium (angle = pi) in the state
  // (position, velocity, angle - pi, angular_velocity).
  ContinuousLTI linearize_upright() const;
};

struct CartPendulumState {
  double position = 0.0;
  double velocity = 0.0;
  double angle = 0.0;  // rad, 0 = hanging down, pi = upright, stored unwrapped
  double angular_velocity = 0.0;
};

// One exact Euler step with the discretized cart matrices; this is the same
// map the supervisor's sets are computed for.
CartState step_cart(const CartState& state, double u, double dt,
                    const CartModel& model = {});

// One supervisor tick of the nonlinear cart-pendulum, integrated with
// `substeps` RK4 sub-steps.
CartPendulumState step_cart_pendulum(const CartPendulumState& state, double u,
                                     double dt, const CartPendulumModel& model = {});

// Pendulum-only mechanical energy 0.5 m l^2 w^2 - m g l cos(theta); the
// upright target value is m g l.
double pendulum_energy(const CartPendulumState& state, const CartPendulumModel& model);

// Total mechanical energy of the cart-pendulum (integration quality gate).
double total_energy(const CartPendulumState& state, const CartPendulumModel& model);

}  // namespace safesets
