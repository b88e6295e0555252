#include "qflow/horizon.hpp"

#include <algorithm>
#include <future>
#include <sstream>

#include "qflow/instances.hpp"

namespace qflow {
namespace {

struct Reach {
  std::vector<std::optional<std::int64_t>> from_source;
  std::vector<std::optional<std::int64_t>> to_sink;

  // True if an arc copy (tail, time) -> (head, time + duration) can lie on a
  // path (s_i, 0) -> ... -> (t_i, T).
  bool on_path(std::size_t tail, std::int64_t time, std::size_t head, std::int64_t duration,
               std::int64_t horizon) const {
    return from_source[tail] && *from_source[tail] <= time && to_sink[head] &&
           time + duration + *to_sink[head] <= horizon;
  }
};

}  // namespace

ExpansionLp feasibility_lp_from_expansion(const ExpandedNetwork& expansion,
                                          const ExpansionLpOptions& options) {
  const Instance& instance = expansion.instance();
  const Network& network = instance.network;
  const std::int64_t T = expansion.horizon();
  const std::size_t commodity_count = instance.commodities.size();

  std::vector<Reach> reach;
  for (CommodityIndex i = 0; i < commodity_count; ++i) {
    reach.push_back(Reach{transit_distances(network, expansion.source_node(i)),
                          transit_distances(network, expansion.sink_node(i), true)});
  }
  std::vector<std::size_t> tails;
  std::vector<std::size_t> heads;
  for (const auto& arc : network.arcs) {
    tails.push_back(*network.node_index(arc.tail));
    heads.push_back(*network.node_index(arc.head));
  }

  ExpansionLp result;
  const auto& movements = expansion.movement_copies();
  const auto& holdovers = expansion.holdover_arcs();

  // Columns.
  std::vector<std::vector<std::size_t>> movement_columns(movements.size());
  for (std::size_t c = 0; c < movements.size(); ++c) {
    const MovementCopy& copy = movements[c];
    const Arc& arc = network.arcs[copy.arc];
    for (CommodityIndex i = 0; i < commodity_count; ++i) {
      if (options.prune_unreachable &&
          !reach[i].on_path(tails[copy.arc], copy.time, heads[copy.arc], arc.transit, T)) {
        continue;
      }
      movement_columns[c].push_back(result.variables.size());
      result.variables.push_back({ExpansionVariable::Kind::Movement, c, i});
    }
  }
  for (std::size_t h = 0; h < holdovers.size(); ++h) {
    const HoldoverArc& hold = holdovers[h];
    for (CommodityIndex i = 0; i < commodity_count; ++i) {
      if (!hold.usable[i]) continue;
      if (options.prune_unreachable && !reach[i].on_path(hold.node, hold.time, hold.node, 1, T)) {
        continue;
      }
      result.variables.push_back({ExpansionVariable::Kind::Holdover, h, i});
    }
  }
  result.program.variable_count = result.variables.size();

  // Capacity rows.
  for (std::size_t c = 0; c < movements.size(); ++c) {
    if (movement_columns[c].empty()) continue;
    Constraint row;
    row.relation = Relation::LessEqual;
    row.rhs = network.arcs[movements[c].arc].capacity;
    for (const std::size_t column : movement_columns[c]) row.terms.emplace_back(column, 1);
    result.program.constraints.push_back(std::move(row));
  }

  // Conservation rows: inflow - outflow = demand - supply at every node copy.
  std::vector<std::vector<std::pair<std::size_t, Rational>>> terms(commodity_count *
                                                                   expansion.node_copy_count());
  auto slot = [&](CommodityIndex i, std::size_t node, std::int64_t time) -> auto& {
    return terms[i * expansion.node_copy_count() + expansion.node_copy(node, time)];
  };
  for (std::size_t column = 0; column < result.variables.size(); ++column) {
    const ExpansionVariable& var = result.variables[column];
    if (var.kind == ExpansionVariable::Kind::Movement) {
      const MovementCopy& copy = movements[var.copy];
      const Arc& arc = network.arcs[copy.arc];
      slot(var.commodity, tails[copy.arc], copy.time).emplace_back(column, -1);
      slot(var.commodity, heads[copy.arc], copy.time + arc.transit).emplace_back(column, 1);
    } else {
      const HoldoverArc& hold = holdovers[var.copy];
      slot(var.commodity, hold.node, hold.time).emplace_back(column, -1);
      slot(var.commodity, hold.node, hold.time + 1).emplace_back(column, 1);
    }
  }
  for (CommodityIndex i = 0; i < commodity_count; ++i) {
    const Rational& demand = instance.commodities[i].demand;
    for (std::size_t v = 0; v < network.nodes.size(); ++v) {
      for (std::int64_t t = 0; t <= T; ++t) {
        Rational rhs = 0;
        if (v == expansion.sink_node(i) && t == T) rhs += demand;
        if (v == expansion.source_node(i) && t == 0) rhs -= demand;
        auto& row_terms = slot(i, v, t);
        if (row_terms.empty() && rhs == 0) continue;
        std::sort(row_terms.begin(), row_terms.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        result.program.constraints.push_back(
            Constraint{std::move(row_terms), Relation::Equal, std::move(rhs)});
      }
    }
  }
  return result;
}

StaticSolution to_static_solution(const ExpansionLp& lp, const std::vector<Rational>& assignment) {
  if (assignment.size() != lp.variables.size()) {
    throw std::invalid_argument("assignment size differs from LP column count");
  }
  StaticSolution solution;
  for (std::size_t column = 0; column < assignment.size(); ++column) {
    if (assignment[column] == 0) continue;
    const ExpansionVariable& var = lp.variables[column];
    auto& target = var.kind == ExpansionVariable::Kind::Movement ? solution.movement
                                                                 : solution.holdover;
    target[{var.copy, var.commodity}] = assignment[column];
  }
  return solution;
}

HorizonProbe probe_horizon(const Instance& instance, std::int64_t horizon, StorageMode mode,
                           const SolveOptions& options) {
  const ExpandedNetwork expansion = build_time_expanded(instance, {horizon, mode});
  const ExpansionLp lp = feasibility_lp_from_expansion(expansion, options.expansion);
  const LpResult result = lp_feasible(lp.program, options.lp);

  HorizonProbe probe;
  probe.horizon = horizon;
  probe.mode = mode;
  probe.feasible = result.feasible;
  probe.variables = lp.program.variable_count;
  probe.constraints = lp.program.constraints.size();
  probe.pivots = result.pivots;
  if (result.feasible) {
    probe.witness = extract_flow_over_time(to_static_solution(lp, result.assignment), expansion);
  }
  return probe;
}

HorizonSearch min_feasible_horizon(const Instance& instance, StorageMode mode,
                                   std::int64_t max_horizon, const SolveOptions& options) {
  const ValidationReport validation = validate_instance(instance);
  if (!validation.ok()) {
    throw std::invalid_argument("invalid instance: " + validation.defects.front());
  }
  if (max_horizon < 1) throw std::invalid_argument("maximum horizon must be at least 1");

  std::int64_t lower = 1;
  for (const auto& commodity : instance.commodities) {
    lower = std::max(lower, *shortest_transit(instance.network, commodity.source, commodity.sink));
  }

  HorizonSearch search;
  auto feasible = [&](std::int64_t T) {
    search.probes.push_back(probe_horizon(instance, T, mode, options));
    return search.probes.back().feasible;
  };
  if (lower > max_horizon) return search;

  // Feasibility is monotone in T, so everything up to `infeasible` fails.
  // Gallop upwards from the lower bound with doubling steps, then bisect.
  std::int64_t infeasible = lower - 1;
  std::int64_t candidate = lower;
  std::int64_t step = 1;
  while (!feasible(candidate)) {
    infeasible = candidate;
    if (candidate == max_horizon) return search;
    candidate = std::min(max_horizon, lower + step);
    step *= 2;
  }
  std::int64_t feasible_at = candidate;
  while (feasible_at - infeasible > 1) {
    const std::int64_t middle = infeasible + (feasible_at - infeasible) / 2;
    if (feasible(middle)) {
      feasible_at = middle;
    } else {
      infeasible = middle;
    }
  }
  search.horizon = feasible_at;
  return search;
}

NoHorizonFound::NoHorizonFound(StorageMode mode, std::int64_t max_horizon)
    : std::runtime_error("no feasible horizon up to " + std::to_string(max_horizon) + " (" +
                         std::string(to_string(mode)) + ")") {}

SpeedupReport speedup_ratio(const Instance& instance, std::int64_t max_horizon,
                            const SolveOptions& options) {
  SpeedupReport report;
  HorizonSearch with = min_feasible_horizon(instance, StorageMode::WithStorage, max_horizon,
                                            options);
  if (!with.horizon) throw NoHorizonFound(StorageMode::WithStorage, max_horizon);
  HorizonSearch without = min_feasible_horizon(instance, StorageMode::NoIntermediateStorage,
                                               max_horizon, options);
  if (!without.horizon) throw NoHorizonFound(StorageMode::NoIntermediateStorage, max_horizon);

  report.min_horizon_with_storage = *with.horizon;
  report.min_horizon_without_storage = *without.horizon;
  report.ratio = make_rational(*without.horizon, *with.horizon);
  report.probes = std::move(with.probes);
  report.probes.insert(report.probes.end(), std::make_move_iterator(without.probes.begin()),
                       std::make_move_iterator(without.probes.end()));
  return report;
}

std::vector<GapReport> gap_sweep(int k_min, int k_max, const GapSweepOptions& options) {
  if (k_min < 3 || k_max < k_min) throw std::invalid_argument("gap sweep needs 3 <= k_min <= k_max");

  auto run = [&options](int k) {
    const Instance instance = cycle_instance({k, Rational(2)});
    return std::make_pair(instance, speedup_ratio(instance, 4 * k, options.solve));
  };

  std::vector<std::pair<Instance, SpeedupReport>> results;
  if (options.parallel) {
    std::vector<std::future<std::pair<Instance, SpeedupReport>>> tasks;
    for (int k = k_min; k <= k_max; ++k) tasks.push_back(std::async(std::launch::async, run, k));
    for (auto& task : tasks) results.push_back(task.get());
  } else {
    for (int k = k_min; k <= k_max; ++k) results.push_back(run(k));
  }

  std::vector<GapReport> reports;
  for (int k = k_min; k <= k_max; ++k) {
    auto& [instance, speedup] = results[static_cast<std::size_t>(k - k_min)];
    if (options.on_probes) options.on_probes(k, instance, speedup.probes);
    reports.push_back(GapReport{k, speedup.min_horizon_with_storage,
                                speedup.min_horizon_without_storage, speedup.ratio});
  }
  return reports;
}

std::string gap_csv(const std::vector<GapReport>& reports) {
  std::ostringstream out;
  out << "k,minT_with,minT_without,ratio\n";
  for (const auto& r : reports) {
    out << r.k << ',' << r.min_horizon_with_storage << ',' << r.min_horizon_without_storage << ','
        << r.min_horizon_without_storage << '/' << r.min_horizon_with_storage << '\n';
  }
  return out.str();
}

}  // namespace qflow
