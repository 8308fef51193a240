#include "safesets/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace safesets {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

PlantKind plant_kind_from_string(const std::string& name) {
  if (name == "cart2d") return PlantKind::Cart2D;
  if (name == "cart_pendulum") return PlantKind::CartPendulum4D;
  throw ConfigError("unknown plant type: " + name);
}

Disturbance::Target target_from_string(const std::string& name) {
  if (name == "cart_velocity") return Disturbance::Target::CartVelocity;
  if (name == "pendulum_angular_velocity") {
    return Disturbance::Target::PendulumAngularVelocity;
  }
  throw ConfigError("unknown disturbance target: " + name);
}

}  // namespace

void Scenario::validate() const {
  const std::size_t n = (plant == PlantKind::Cart2D) ? 2 : 4;
  if (initial_state.size() != n) {
    throw ConfigError("scenario: initial state has wrong dimension for the plant");
  }
  if (!(horizon > 0.0) || !(dt > 0.0)) {
    throw ConfigError("scenario: horizon and dt must be positive");
  }
  if (!(track_limit > 0.0)) {
    throw ConfigError("scenario: track limit must be positive");
  }
  for (const auto& d : disturbances) {
    if (d.time < 0.0 || d.time >= horizon) {
      throw ConfigError("scenario: disturbance time outside the horizon");
    }
    if (d.target == Disturbance::Target::PendulumAngularVelocity &&
        plant == PlantKind::Cart2D) {
      throw ConfigError("scenario: pendulum disturbance on the 2D plant");
    }
  }
}

std::vector<TraceSample> run_scenario(const Scenario& scenario,
                                      const SupervisorConfig& supervisor) {
  scenario.validate();
  if (scenario.supervised) supervisor.validate();

  const long ticks = std::lround(scenario.horizon / scenario.dt);
  StudentController controller(scenario.controller, scenario.seed, scenario.model,
                               scenario.dt);
  SupervisorState sup;
  Vector state = scenario.initial_state;
  std::vector<TraceSample> trace;
  trace.reserve(static_cast<std::size_t>(ticks));

  for (long k = 0; k < ticks; ++k) {
    const double t = static_cast<double>(k) * scenario.dt;
    const double u_student = controller.compute(state, t);
    double u_applied = 0.0;
    if (scenario.supervised) {
      const std::span<const double> substate(state.data(), 2);
      auto [u, next] = supervise_step(supervisor, sup, substate, u_student);
      u_applied = u;
      sup = next;
    } else {
      u_applied = std::clamp(u_student, -supervisor.u_max, supervisor.u_max);
    }
    trace.push_back(TraceSample{t, state, u_student, u_applied, sup.mode, sup.flags});

    if (scenario.plant == PlantKind::Cart2D) {
      const CartState next = step_cart({state[0], state[1]}, u_applied, scenario.dt,
                                       scenario.model.cart);
      state[0] = next.position;
      state[1] = next.velocity;
    } else {
      const CartPendulumState next = step_cart_pendulum(
          {state[0], state[1], state[2], state[3]}, u_applied, scenario.dt,
          scenario.model);
      state = {next.position, next.velocity, next.angle, next.angular_velocity};
    }
    for (const auto& d : scenario.disturbances) {
      if (std::lround(d.time / scenario.dt) != k) continue;
      if (d.target == Disturbance::Target::CartVelocity) {
        state[1] += d.magnitude;
      } else {
        state[3] += d.magnitude;
      }
    }
  }
  return trace;
}

double max_abs_position(const std::vector<TraceSample>& trace) {
  double worst = 0.0;
  for (const auto& s : trace) worst = std::max(worst, std::abs(s.state[0]));
  return worst;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceSample>& trace) {
  out << "time,x1,x2,x3,x4,u_student,u_applied,mode,flags\n";
  for (const auto& s : trace) {
    out << fmt(s.time) << ',' << fmt(s.state[0]) << ',' << fmt(s.state[1]) << ',';
    if (s.state.size() == 4) {
      out << fmt(s.state[2]) << ',' << fmt(s.state[3]);
    } else {
      out << ',';
    }
    out << ',' << fmt(s.u_student) << ',' << fmt(s.u_applied) << ','
        << to_string(s.mode) << ',' << s.flags << '\n';
  }
}

std::string trace_csv_string(const std::vector<TraceSample>& trace) {
  std::ostringstream out;
  write_trace_csv(out, trace);
  return out.str();
}

namespace {

CartPendulumModel parse_plant_model(const Config& cfg) {
  CartPendulumModel model;
  model.cart.friction = cfg.get_double_or("plant", "friction", model.cart.friction);
  model.cart.input_gain = cfg.get_double_or("plant", "input_gain", model.cart.input_gain);
  model.cart_mass = cfg.get_double_or("plant", "cart_mass", model.cart_mass);
  model.pendulum_mass = cfg.get_double_or("plant", "pendulum_mass", model.pendulum_mass);
  model.length = cfg.get_double_or("plant", "length", model.length);
  model.pivot_damping = cfg.get_double_or("plant", "pivot_damping", model.pivot_damping);
  model.gravity = cfg.get_double_or("plant", "gravity", model.gravity);
  model.substeps = static_cast<int>(cfg.get_long_or("plant", "substeps", model.substeps));
  return model;
}

ControllerSpec parse_controller(const Config& cfg) {
  ControllerSpec spec;
  spec.kind = controller_kind_from_string(cfg.get_string("controller", "kind"));
  spec.ref = cfg.get_double_or("controller", "ref", spec.ref);
  spec.kp = cfg.get_double_or("controller", "kp", spec.kp);
  spec.kd = cfg.get_double_or("controller", "kd", spec.kd);
  spec.gain = cfg.get_double_or("controller", "gain", spec.gain);
  spec.amplitude = cfg.get_double_or("controller", "amplitude", spec.amplitude);
  spec.period = cfg.get_double_or("controller", "period", spec.period);
  spec.energy_gain = cfg.get_double_or("controller", "energy_gain", spec.energy_gain);
  spec.swing_clamp = cfg.get_double_or("controller", "swing_clamp", spec.swing_clamp);
  spec.catch_angle = cfg.get_double_or("controller", "catch_angle", spec.catch_angle);
  spec.balance_ref = cfg.get_double_or("controller", "balance_ref", spec.balance_ref);
  if (cfg.has_key("controller", "balance_poles")) {
    const auto poles = cfg.get_doubles("controller", "balance_poles");
    if (poles.size() != 4) throw ConfigError("controller: balance_poles needs 4 values");
    std::copy(poles.begin(), poles.end(), spec.balance_poles.begin());
  }
  spec.noise_amp = cfg.get_double_or("controller", "noise", spec.noise_amp);
  return spec;
}

}  // namespace

LoadedScenario load_scenario_file(const std::filesystem::path& path) {
  const Config cfg = Config::parse_file(path);
  const auto base = path.parent_path();

  Scenario sc;
  sc.name = path.stem().string();
  sc.plant = plant_kind_from_string(cfg.get_string("plant", "type"));
  sc.model = parse_plant_model(cfg);
  sc.controller = parse_controller(cfg);

  for (const auto& section : cfg.sections_with_prefix("disturbance.")) {
    Disturbance d;
    d.time = cfg.get_double(section, "time");
    d.target = target_from_string(cfg.get_string(section, "target"));
    d.magnitude = cfg.get_double(section, "magnitude");
    sc.disturbances.push_back(d);
  }

  sc.dt = cfg.get_double_or("run", "dt", sc.dt);
  sc.horizon = cfg.get_double("run", "horizon");
  sc.seed = static_cast<std::uint64_t>(cfg.get_long_or("run", "seed", 1));
  sc.initial_state = cfg.get_doubles("run", "initial");
  sc.track_limit = cfg.get_double_or("run", "track_limit", sc.track_limit);
  sc.supervised = cfg.get_bool_or("supervisor", "enabled", true);

  const double u_max = cfg.get_double("supervisor", "umax");
  SupervisorConfig sup{
      HPolytope::box({{-1e12, 1e12}, {-1e12, 1e12}}),
      HPolytope::box({{-1e12, 1e12}, {-1e12, 1e12}}),
      FeedbackGain{Matrix(1, 2)},
      Vector{0.0, 0.0},
      u_max,
      Vector{cfg.get_double_or("supervisor", "settle_pos", 0.01),
             cfg.get_double_or("supervisor", "settle_vel", 0.05)},
      cfg.get_long_or("supervisor", "settle_ticks", 250),
      cfg.get_double_or("supervisor", "shutdown_after", 5.0),
      sc.dt};

  if (sc.supervised) {
    sup.s_inf = read_poly_file(base / cfg.get_string("supervisor", "sinf"));
    sup.o_inf = read_poly_file(base / cfg.get_string("supervisor", "oinf"));
    if (cfg.has_key("supervisor", "safe_point")) {
      sup.safe_point = cfg.get_doubles("supervisor", "safe_point");
    }
    if (cfg.has_key("supervisor", "gain")) {
      const auto g = cfg.get_doubles("supervisor", "gain");
      Matrix k(1, g.size());
      for (std::size_t j = 0; j < g.size(); ++j) k(0, j) = g[j];
      sup.gain = FeedbackGain{std::move(k)};
    } else {
      // Default to the same gain the sets were synthesized for.
      const ModelFile mf =
          load_model_file(base / cfg.get_string("supervisor", "model"));
      const auto poles = cfg.get_doubles("supervisor", "poles");
      const DiscreteLTI sys = euler_discretize(mf.continuous, sc.dt);
      sup.gain = place_poles(sys, poles);
    }
    sup.validate();
  }

  sc.validate();
  return LoadedScenario{std::move(sc), std::move(sup), cfg};
}

ModelFile load_model_file(const std::filesystem::path& path) {
  const Config cfg = Config::parse_file(path);
  const long n = cfg.get_long("model", "states");
  const long m = cfg.get_long("model", "inputs");
  if (n < 1 || n > 8 || m < 1) throw ConfigError(path.string() + ": bad model dimensions");

  Matrix a(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  Matrix b(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
  for (long i = 0; i < n; ++i) {
    const auto arow = cfg.get_doubles("model", "a." + std::to_string(i));
    if (arow.size() != static_cast<std::size_t>(n)) {
      throw ConfigError(path.string() + ": row a." + std::to_string(i) +
                        " has wrong length");
    }
    for (long j = 0; j < n; ++j) a(i, j) = arow[static_cast<std::size_t>(j)];
    const auto brow = cfg.get_doubles("model", "b." + std::to_string(i));
    if (brow.size() != static_cast<std::size_t>(m)) {
      throw ConfigError(path.string() + ": row b." + std::to_string(i) +
                        " has wrong length");
    }
    for (long j = 0; j < m; ++j) b(i, j) = brow[static_cast<std::size_t>(j)];
  }

  std::vector<Vector> normals;
  std::vector<double> offsets;
  for (long i = 0;; ++i) {
    const std::string key = "x." + std::to_string(i);
    if (!cfg.has_key("model", key)) break;
    const auto row = cfg.get_doubles("model", key);
    if (row.size() != static_cast<std::size_t>(n) + 1) {
      throw ConfigError(path.string() + ": constraint " + key +
                        " needs n normals plus an offset");
    }
    normals.emplace_back(row.begin(), row.end() - 1);
    offsets.push_back(row.back());
  }
  if (normals.empty()) {
    throw ConfigError(path.string() + ": model defines no state constraints (x.N rows)");
  }
  Matrix h(normals.size(), static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < normals.size(); ++i) {
    for (long j = 0; j < n; ++j) h(i, static_cast<std::size_t>(j)) = normals[i][static_cast<std::size_t>(j)];
  }
  return ModelFile{ContinuousLTI(std::move(a), std::move(b)),
                   HPolytope(std::move(h), Vector(offsets)), cfg};
}

}  // namespace safesets
