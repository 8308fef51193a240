#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "safesets/config.hpp"
#include "safesets/controllers.hpp"
#include "safesets/plant.hpp"
#include "safesets/supervisor.hpp"

namespace safesets {

enum class PlantKind { Cart2D, CartPendulum4D };

struct Disturbance {
  enum class Target { CartVelocity, PendulumAngularVelocity };
  double time = 0.0;       // s; applied as an impulse at the enclosing tick
  Target target = Target::CartVelocity;
  double magnitude = 0.0;  // velocity increment in state units
};

// Everything needed to reproduce one deterministic supervised run.
struct Scenario {
  std::string name = "scenario";
  PlantKind plant = PlantKind::Cart2D;
  CartPendulumModel model;  // model.cart is used alone for the 2D plant
  ControllerSpec controller;
  std::vector<Disturbance> disturbances;
  Vector initial_state;  // dim 2 or 4
  double horizon = 1.0;  // s
  double dt = 0.002;     // supervisor sample period
  std::uint64_t seed = 1;
  double track_limit = 0.4;  // |position| bound defining a safety violation
  bool supervised = true;

  void validate() const;
};

// One supervisor tick of a run.
struct TraceSample {
  double time = 0.0;
  Vector state;  // pre-step state, dim 2 or 4
  double u_student = 0.0;
  double u_applied = 0.0;
  Mode mode = Mode::Nominal;
  long flags = 0;
};

// Fixed-step loop: sample state, supervise, step the plant, then apply any
// impulse scheduled for the tick. Bit-deterministic for a given scenario.
std::vector<TraceSample> run_scenario(const Scenario& scenario,
                                      const SupervisorConfig& supervisor);

double max_abs_position(const std::vector<TraceSample>& trace);

// CSV trace with the exact header
//   time,x1,x2,x3,x4,u_student,u_applied,mode,flags
// (x3, x4 left empty for 2D states).
void write_trace_csv(std::ostream& out, const std::vector<TraceSample>& trace);
std::string trace_csv_string(const std::vector<TraceSample>& trace);

// Scenario file loading ([plant]/[controller]/[disturbance.N]/[supervisor]/
// [run] sections). Set files referenced by [supervisor] are resolved
// relative to the scenario file.
struct LoadedScenario {
  Scenario scenario;
  SupervisorConfig supervisor;
  Config raw;  // for manifest echoing
};

LoadedScenario load_scenario_file(const std::filesystem::path& path);

// Model file loading ([model] section: continuous A and B row by row plus
// constraint rows for the state set X).
struct ModelFile {
  ContinuousLTI continuous;
  HPolytope state_set;
  Config raw;
};

ModelFile load_model_file(const std::filesystem::path& path);

}  // namespace safesets
