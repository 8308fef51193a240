#include "safesets/plant.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace safesets {

ContinuousLTI CartModel::continuous() const {
  return ContinuousLTI(Matrix{{0.0, 1.0}, {0.0, -friction}},
                       Matrix{{0.0}, {input_gain}});
}

DiscreteLTI CartModel::discretize(double dt) const {
  return euler_discretize(continuous(), dt);
}

CartState step_cart(const CartState& state, double u, double dt,
                    const CartModel& model) {
  if (!(dt > 0.0)) throw std::invalid_argument("step_cart: dt must be positive");
  CartState next;
  next.position = state.position + dt * state.velocity;
  next.velocity = (1.0 - model.friction * dt) * state.velocity + model.input_gain * dt * u;
  return next;
}

namespace {

using State4 = std::array<double, 4>;

// Cart-pendulum equations of motion. theta = 0 is hanging down, the bob sits
// at (p + l sin(theta), -l cos(theta)):
//   (M+m) pdd + m l cos(th) thdd - m l thd^2 sin(th) = M (g_u u - c pd)
//   m l cos(th) pdd + m l^2 thdd + b thd + m g l sin(th) = 0
// The 2x2 mass matrix is solved directly; its determinant
// m l^2 (M + m sin^2 th) never vanishes.
State4 derivatives(const State4& s, double u, const CartPendulumModel& mdl) {
  const double pd = s[1], th = s[2], thd = s[3];
  const double m = mdl.pendulum_mass, M = mdl.cart_mass, l = mdl.length;
  const double sin_th = std::sin(th), cos_th = std::cos(th);
  const double force = M * (mdl.cart.input_gain * u - mdl.cart.friction * pd);

  const double a11 = M + m, a12 = m * l * cos_th;
  const double a21 = m * l * cos_th, a22 = m * l * l;
  const double r1 = force + m * l * thd * thd * sin_th;
  const double r2 = -m * mdl.gravity * l * sin_th - mdl.pivot_damping * thd;
  const double det = a11 * a22 - a12 * a21;
  const double pdd = (r1 * a22 - a12 * r2) / det;
  const double thdd = (a11 * r2 - r1 * a21) / det;
  return {pd, pdd, thd, thdd};
}

State4 rk4_step(const State4& s, double u, double h, const CartPendulumModel& mdl) {
  auto add = [](const State4& a, const State4& b, double f) {
    State4 r;
    for (int i = 0; i < 4; ++i) r[i] = a[i] + f * b[i];
    return r;
  };
  const State4 k1 = derivatives(s, u, mdl);
  const State4 k2 = derivatives(add(s, k1, 0.5 * h), u, mdl);
  const State4 k3 = derivatives(add(s, k2, 0.5 * h), u, mdl);
  const State4 k4 = derivatives(add(s, k3, h), u, mdl);
  State4 r;
  for (int i = 0; i < 4; ++i) {
    r[i] = s[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return r;
}

}  // namespace

ContinuousLTI CartPendulumModel::linearize_upright() const {
  // Substitute theta = pi + phi, drop second-order terms. With
  // c = cart.friction, g_u = cart.input_gain, b = pivot_damping:
  //   pdd  = g_u u - c pd + (m/M) g phi - b/(M l) phd
  //   phdd = pdd / l + (g/l) phi - b/(m l^2) phd
  const double m = pendulum_mass, M = cart_mass, l = length, g = gravity;
  const double c = cart.friction, gu = cart.input_gain, b = pivot_damping;
  if (!(m > 0.0)) {
    throw std::domain_error("linearize_upright: pendulum mass must be positive");
  }
  const double a21 = -c, a22 = (m / M) * g, a23 = -b / (M * l);
  Matrix a{{0.0, 1.0, 0.0, 0.0},
           {0.0, a21, a22, a23},
           {0.0, 0.0, 0.0, 1.0},
           {0.0, a21 / l, a22 / l + g / l, a23 / l - b / (m * l * l)}};
  Matrix bb{{0.0}, {gu}, {0.0}, {gu / l}};
  return ContinuousLTI(std::move(a), std::move(bb));
}

CartPendulumState step_cart_pendulum(const CartPendulumState& state, double u,
                                     double dt, const CartPendulumModel& model) {
  if (!(dt > 0.0)) throw std::invalid_argument("step_cart_pendulum: dt must be positive");
  if (model.substeps < 1) {
    throw std::invalid_argument("step_cart_pendulum: substeps must be at least 1");
  }
  State4 s = {state.position, state.velocity, state.angle, state.angular_velocity};
  const double h = dt / model.substeps;
  for (int i = 0; i < model.substeps; ++i) s = rk4_step(s, u, h, model);
  return CartPendulumState{s[0], s[1], s[2], s[3]};
}

double pendulum_energy(const CartPendulumState& state, const CartPendulumModel& model) {
  const double m = model.pendulum_mass, l = model.length;
  return 0.5 * m * l * l * state.angular_velocity * state.angular_velocity -
         m * model.gravity * l * std::cos(state.angle);
}

double total_energy(const CartPendulumState& state, const CartPendulumModel& model) {
  const double m = model.pendulum_mass, M = model.cart_mass, l = model.length;
  const double pd = state.velocity, thd = state.angular_velocity;
  const double kinetic = 0.5 * (M + m) * pd * pd +
                         m * l * pd * thd * std::cos(state.angle) +
                         0.5 * m * l * l * thd * thd;
  const double potential = -m * model.gravity * l * std::cos(state.angle);
  return kinetic + potential;
}

}  // namespace safesets
