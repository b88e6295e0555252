#include "qflow/cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "qflow/checker.hpp"
#include "qflow/expansion.hpp"
#include "qflow/horizon.hpp"
#include "qflow/instances.hpp"
#include "qflow/io.hpp"

namespace qflow {
namespace {

constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kUsage = 2;

// Raised for bad input files or flag values; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

StorageMode mode_from_flag(const std::string& text) {
  if (const auto mode = parse_storage_mode(text)) return *mode;
  throw UsageError("unknown mode '" + text + "' (expected with-storage or no-storage)");
}

Instance load_instance(const std::string& path) {
  Instance instance = parse_instance(read_file(path));
  const ValidationReport validation = validate_instance(instance);
  if (!validation.ok()) {
    std::string message = "invalid instance '" + path + "':";
    for (const auto& defect : validation.defects) message += "\n  " + defect;
    throw UsageError(message);
  }
  return instance;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_file(path, text);
  }
}

struct Flags {
  // gen
  int k{3};
  std::string d0{"2"};
  std::string output;
  std::uint64_t seed{1};
  RandomInstanceBounds bounds;
  // solve / check / expand
  std::string mode;
  std::int64_t max_horizon{64};
  std::int64_t horizon{1};
  std::string instance_path;
  std::string flow_path;
  std::string emit_flow;
  bool floating{false};
  // gap
  int k_min{3};
  int k_max{6};
  std::string csv;
  bool parallel{false};
};

SolveOptions solve_options(const Flags& flags) {
  SolveOptions options;
  if (flags.floating) options.lp.arithmetic = Arithmetic::Floating;
  return options;
}

int run_solve(const Flags& flags, std::ostream& out, std::ostream& err) {
  const Instance instance = load_instance(flags.instance_path);
  const StorageMode mode = mode_from_flag(flags.mode);
  const HorizonSearch search =
      min_feasible_horizon(instance, mode, flags.max_horizon, solve_options(flags));
  for (const auto& probe : search.probes) {
    err << "T=" << probe.horizon << ' ' << (probe.feasible ? "feasible" : "infeasible") << " ("
        << probe.variables << " vars, " << probe.constraints << " rows, " << probe.pivots
        << " pivots)\n";
  }
  if (!search.horizon) {
    err << "no feasible horizon up to " << flags.max_horizon << "\n";
    return kInfeasible;
  }
  out << *search.horizon << "\n";
  if (!flags.emit_flow.empty()) {
    const auto it = std::find_if(search.probes.begin(), search.probes.end(), [&](const auto& p) {
      return p.feasible && p.horizon == *search.horizon;
    });
    write_file(flags.emit_flow, serialize_flow(*it->witness));
  }
  return kOk;
}

int run_check(const Flags& flags, std::ostream& out, std::ostream& err) {
  const Instance instance = load_instance(flags.instance_path);
  const FlowOverTime flow = parse_flow(read_file(flags.flow_path));
  const StorageMode mode = mode_from_flag(flags.mode);
  ViolationReport report;
  try {
    report = check_flow(flow, instance, mode);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("flow does not match instance: ") + e.what());
  }
  out << report.to_json_lines();
  if (!report.feasible()) {
    err << report.violations.size() << " violation(s)\n";
    return kInfeasible;
  }
  return kOk;
}

int run_expand(const Flags& flags, std::ostream& out) {
  const Instance instance = load_instance(flags.instance_path);
  const ExpandedNetwork expansion =
      build_time_expanded(instance, {flags.horizon, mode_from_flag(flags.mode)});
  out << expansion.dump();
  return kOk;
}

int run_gap(const Flags& flags, std::ostream& out, std::ostream& err) {
  GapSweepOptions options;
  options.solve = solve_options(flags);
  options.parallel = flags.parallel;
  const auto reports = gap_sweep(flags.k_min, flags.k_max, options);
  for (const auto& r : reports) {
    err << "k=" << r.k << " with=" << r.min_horizon_with_storage
        << " without=" << r.min_horizon_without_storage << " ratio=" << to_string(r.ratio) << "\n";
  }
  emit(flags.csv, gap_csv(reports), out);
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quickest multi-commodity flows over time with and without storage", "qflow"};
  app.require_subcommand(1);
  Flags flags;

  auto* gen = app.add_subcommand("gen", "Write a generated instance or flow");
  gen->require_subcommand(1);
  auto* gen_cycle = gen->add_subcommand("cycle", "Cycle family instance");
  gen_cycle->add_option("--k", flags.k, "Cycle length (>= 3)")->required();
  gen_cycle->add_option("--d0", flags.d0, "Demand of commodity 0 (p/q)");
  gen_cycle->add_option("-o,--output", flags.output, "Output file (stdout if omitted)");
  auto* gen_lemma1 = gen->add_subcommand("lemma1", "Horizon k+1 flow using storage at v0");
  gen_lemma1->add_option("--k", flags.k, "Cycle length (>= 3)")->required();
  gen_lemma1->add_option("-o,--output", flags.output, "Output file (stdout if omitted)");
  auto* gen_wave = gen->add_subcommand("wave", "Horizon 2k-1 flow without storage");
  gen_wave->add_option("--k", flags.k, "Cycle length (>= 3)")->required();
  gen_wave->add_option("-o,--output", flags.output, "Output file (stdout if omitted)");
  auto* gen_random = gen->add_subcommand("random", "Seeded random instance");
  gen_random->add_option("--seed", flags.seed, "RNG seed");
  gen_random->add_option("--node-max", flags.bounds.node_max, "Maximum node count");
  gen_random->add_option("--arc-max", flags.bounds.arc_max, "Maximum arc count");
  gen_random->add_option("--commodity-max", flags.bounds.commodity_max, "Maximum commodities");
  gen_random->add_option("--tau-max", flags.bounds.tau_max, "Maximum transit time");
  gen_random->add_option("-o,--output", flags.output, "Output file (stdout if omitted)");

  auto* solve = app.add_subcommand("solve", "Minimal feasible integer horizon");
  solve->add_option("--mode", flags.mode, "with-storage | no-storage")->required();
  solve->add_option("--max-T", flags.max_horizon, "Largest horizon to try");
  solve->add_option("--emit-flow", flags.emit_flow, "Write the optimal flow over time here");
  solve->add_flag("--float", flags.floating, "Floating-point simplex (tolerance 1e-9)");
  solve->add_option("instance", flags.instance_path, "Instance file")->required();

  auto* check = app.add_subcommand("check", "Validate a flow over time against an instance");
  check->add_option("--mode", flags.mode, "with-storage | no-storage")->required();
  check->add_option("instance", flags.instance_path, "Instance file")->required();
  check->add_option("flow", flags.flow_path, "Flow file")->required();

  auto* expand = app.add_subcommand("expand", "Dump the time-expanded network");
  expand->add_option("--T", flags.horizon, "Integer horizon")->required();
  expand->add_option("--mode", flags.mode, "with-storage | no-storage")->required();
  expand->add_option("instance", flags.instance_path, "Instance file")->required();

  auto* gap = app.add_subcommand("gap", "Speed-up sweep over the cycle family");
  gap->add_option("--k-min", flags.k_min, "Smallest k (>= 3)")->required();
  gap->add_option("--k-max", flags.k_max, "Largest k")->required();
  gap->add_option("--csv", flags.csv, "CSV output file (stdout if omitted)");
  gap->add_flag("--parallel", flags.parallel, "Solve different k concurrently");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (gen_cycle->parsed()) {
      const Instance instance = cycle_instance({flags.k, parse_rational(flags.d0)});
      emit(flags.output, serialize_instance(instance), out);
      return kOk;
    }
    if (gen_lemma1->parsed()) {
      emit(flags.output, serialize_flow(lemma1_flow(flags.k)), out);
      return kOk;
    }
    if (gen_wave->parsed()) {
      emit(flags.output, serialize_flow(wave_schedule_no_storage(flags.k)), out);
      return kOk;
    }
    if (gen_random->parsed()) {
      emit(flags.output, serialize_instance(random_instance(flags.seed, flags.bounds)), out);
      return kOk;
    }
    if (solve->parsed()) return run_solve(flags, out, err);
    if (check->parsed()) return run_check(flags, out, err);
    if (expand->parsed()) return run_expand(flags, out);
    if (gap->parsed()) return run_gap(flags, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace qflow
