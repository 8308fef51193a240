// safesets command line: compute invariant sets, attenuate them into safe
// sets, run supervised simulations, and inspect the results.
//
// Exit codes: 0 ok, 2 input error, 3 non-convergence, 4 infeasible
// attenuation, 5 safety violation.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "safesets/invariant.hpp"
#include "safesets/manifest.hpp"
#include "safesets/scenario.hpp"
#include "safesets/version.hpp"

namespace fs = std::filesystem;
using namespace safesets;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNoConverge = 3;
constexpr int kExitAttenuation = 4;
constexpr int kExitSafety = 5;

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", values[i]);
    out += buf;
  }
  return out;
}

struct ComputeArgs {
  std::string model;
  std::vector<double> poles;
  double dt = 0.002;
  long max_iter = 500;
  std::string out;
  double input_limit = 0.0;  // 0 disables the |K x| <= limit rows
};

int run_compute(const ComputeArgs& args) {
  const ModelFile mf = load_model_file(args.model);
  for (double p : args.poles) {
    if (std::abs(p) >= 1.0 - 1e-9) {
      std::cerr << "error: requested poles must be strictly inside the unit circle\n";
      return kExitInput;
    }
  }
  const DiscreteLTI sys = euler_discretize(mf.continuous, args.dt);
  const FeedbackGain gain = place_poles(sys, args.poles);
  const DiscreteLTI loop = closed_loop(sys, gain);

  HPolytope x_set = mf.state_set;
  if (args.input_limit > 0.0) {
    // Restrict to the region where the override law respects the saturation
    // bound, so the certified feedback is exactly the applied feedback.
    const std::size_t n = x_set.dim();
    Matrix h(2, n);
    for (std::size_t j = 0; j < n; ++j) {
      h(0, j) = gain.k(0, j);
      h(1, j) = -gain.k(0, j);
    }
    x_set = intersect(x_set, HPolytope(std::move(h), Vector{args.input_limit,
                                                            args.input_limit}));
  }

  const InvariantResult res = compute_max_invariant(x_set, loop.a, args.max_iter);
  write_poly_file(args.out, res.o_inf);

  RunManifest manifest;
  manifest.command = "sets compute";
  manifest.inputs = {args.model};
  manifest.outputs = {args.out};
  manifest.config_echo = mf.raw.flattened();
  manifest.config_echo["args.dt"] = join_doubles({args.dt});
  manifest.config_echo["args.poles"] = join_doubles(args.poles);
  manifest.config_echo["args.max_iter"] = std::to_string(args.max_iter);
  manifest.config_echo["args.input_limit"] = join_doubles({args.input_limit});
  manifest.config_echo["result.converged"] = res.converged ? "true" : "false";
  manifest.config_echo["result.iterations"] = std::to_string(res.iterations);
  manifest.config_echo["result.gain"] = join_doubles(gain.k.row(0));
  manifest.tool_version = kVersion;
  manifest.write_alongside(args.out);

  std::cout << "gain: " << join_doubles(gain.k.row(0)) << "\n";
  std::cout << "iterations: " << res.iterations << "\n";
  std::cout << "facets: " << res.o_inf.num_rows() << "\n";
  std::cout << "converged: " << (res.converged ? "true" : "false") << "\n";
  return res.converged ? kExitOk : kExitNoConverge;
}

struct AttenuateArgs {
  std::string oinf;
  std::string model;
  double dt = 0.002;
  double u_max = 12.0;
  std::string out;
  bool closed_loop_flag = false;
  std::vector<double> poles;
};

int run_attenuate(const AttenuateArgs& args) {
  const HPolytope o_inf = read_poly_file(args.oinf);
  const ModelFile mf = load_model_file(args.model);
  DiscreteLTI sys = euler_discretize(mf.continuous, args.dt);
  if (args.closed_loop_flag) {
    if (args.poles.empty()) {
      std::cerr << "error: --closed-loop requires --poles to rebuild the gain\n";
      return kExitInput;
    }
    sys = closed_loop(sys, place_poles(sys, args.poles));
  }

  AttenuationResult att = [&] {
    try {
      return attenuate(o_inf, sys, args.u_max);
    } catch (const AttenuationInfeasible& e) {
      std::cerr << "error: " << e.what() << "\n";
      std::exit(kExitAttenuation);
    }
  }();
  write_poly_file(args.out, att.s_inf);

  RunManifest manifest;
  manifest.command = "sets attenuate";
  manifest.inputs = {args.oinf, args.model};
  manifest.outputs = {args.out};
  manifest.config_echo["args.dt"] = join_doubles({args.dt});
  manifest.config_echo["args.umax"] = join_doubles({args.u_max});
  manifest.config_echo["args.closed_loop"] = args.closed_loop_flag ? "true" : "false";
  manifest.config_echo["result.alpha"] = join_doubles({att.alpha});
  manifest.tool_version = kVersion;
  manifest.write_alongside(args.out);

  std::cout << std::setprecision(12);
  std::cout << "alpha: " << att.alpha << "\n";
  std::cout << "facet margins:";
  for (double m : att.facet_margins) std::cout << ' ' << m;
  std::cout << "\n";
  return kExitOk;
}

struct SimulateArgs {
  std::string scenario;
  std::string trace;
  bool emit_sets = false;
};

void write_xy(const fs::path& path, const HPolytope& set) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write vertex file: " + path.string());
  out << std::setprecision(17);
  for (const auto& v : vertices_2d(set)) out << v[0] << ' ' << v[1] << '\n';
}

int run_simulate(const SimulateArgs& args) {
  const LoadedScenario loaded = load_scenario_file(args.scenario);
  const auto trace = run_scenario(loaded.scenario, loaded.supervisor);
  {
    std::ofstream out(args.trace);
    if (!out) throw std::runtime_error("cannot write trace: " + args.trace);
    write_trace_csv(out, trace);
  }

  RunManifest manifest;
  manifest.command = "simulate";
  manifest.inputs = {args.scenario};
  manifest.outputs = {args.trace};
  manifest.config_echo = loaded.raw.flattened();
  manifest.tool_version = kVersion;

  if (args.emit_sets) {
    fs::path base(args.trace);
    base.replace_extension();
    const fs::path oinf_xy = base.string() + ".oinf.xy";
    const fs::path sinf_xy = base.string() + ".sinf.xy";
    write_xy(oinf_xy, loaded.supervisor.o_inf);
    write_xy(sinf_xy, loaded.supervisor.s_inf);
    manifest.outputs.push_back(oinf_xy.string());
    manifest.outputs.push_back(sinf_xy.string());
  }
  manifest.write_alongside(args.trace);

  long flags = trace.empty() ? 0 : trace.back().flags;
  const double worst = max_abs_position(trace);
  std::cout << std::setprecision(12);
  std::cout << "ticks: " << trace.size() << "\n";
  std::cout << "flags: " << flags << "\n";
  std::cout << "final mode: " << (trace.empty() ? "Nominal" : to_string(trace.back().mode))
            << "\n";
  std::cout << "max |position|: " << worst << "\n";
  if (worst >= loaded.scenario.track_limit) {
    std::cout << "verdict: TRACK LIMIT VIOLATED\n";
    return kExitSafety;
  }
  std::cout << "verdict: ok\n";
  return kExitOk;
}

struct CheckArgs {
  std::string set_a;
  std::string set_b;
  std::vector<double> point;
};

int run_check(const CheckArgs& args) {
  const HPolytope a = read_poly_file(args.set_a);
  std::cout << "a: " << args.set_a << " (dim " << a.dim() << ", " << a.num_rows()
            << " facets)\n";
  if (!args.set_b.empty()) {
    const HPolytope b = read_poly_file(args.set_b);
    std::cout << "subset: " << (is_subset(a, b) ? "true" : "false") << "\n";
    if (!args.point.empty()) {
      std::string zone = "Unrecoverable";
      if (a.contains(args.point)) {
        zone = "Safe";
      } else if (b.contains(args.point)) {
        zone = "GrayZone";
      }
      std::cout << "zone: " << zone << "\n";
    }
  } else if (!args.point.empty()) {
    std::cout << "member: " << (a.contains(args.point) ? "true" : "false") << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant-set safety supervisor toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto* sets = app.add_subcommand("sets", "Compute and transform invariant sets");
  sets->require_subcommand(1);

  ComputeArgs compute_args;
  auto* compute = sets->add_subcommand("compute", "Compute the maximal invariant set");
  compute->add_option("--model", compute_args.model, "model file")->required();
  compute->add_option("--poles", compute_args.poles, "closed-loop poles")
      ->required()
      ->expected(-1);
  compute->add_option("--dt", compute_args.dt, "sample period [s]");
  compute->add_option("--max-iter", compute_args.max_iter, "iteration cap");
  compute->add_option("--out", compute_args.out, "output .poly path")->required();
  compute->add_option("--input-limit", compute_args.input_limit,
                      "also require |K x| <= this input bound");

  AttenuateArgs att_args;
  auto* att = sets->add_subcommand("attenuate", "Shrink a set into its safe subset");
  att->add_option("--oinf", att_args.oinf, "input .poly path")->required();
  att->add_option("--model", att_args.model, "model file")->required();
  att->add_option("--dt", att_args.dt, "sample period [s]");
  att->add_option("--umax", att_args.u_max, "input saturation bound")->required();
  att->add_option("--out", att_args.out, "output .poly path")->required();
  att->add_flag("--closed-loop", att_args.closed_loop_flag,
                "evolve with the closed-loop matrix instead of the open loop");
  att->add_option("--poles", att_args.poles, "poles for --closed-loop")->expected(-1);

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "Run a supervised scenario");
  sim->add_option("--scenario", sim_args.scenario, "scenario file")->required();
  sim->add_option("--trace", sim_args.trace, "output CSV path")->required();
  sim->add_flag("--emit-sets", sim_args.emit_sets,
                "also write 2D vertex lists of the supervisor sets");

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Inspect sets and points");
  check->add_option("--a", check_args.set_a, "first .poly file")->required();
  check->add_option("--b", check_args.set_b, "second .poly file");
  check->add_option("--point", check_args.point, "state to classify")->expected(-1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (compute->parsed()) return run_compute(compute_args);
    if (att->parsed()) return run_attenuate(att_args);
    if (sim->parsed()) return run_simulate(sim_args);
    if (check->parsed()) return run_check(check_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
