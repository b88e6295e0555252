#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qflow/core.hpp"
#include "qflow/expansion.hpp"
#include "qflow/lp.hpp"

namespace qflow {

/// What an LP column stands for in the expansion.
struct ExpansionVariable {
  enum class Kind { Movement, Holdover };
  Kind kind{};
  std::size_t copy{};  // index into movement_copies() or holdover_arcs()
  CommodityIndex commodity{};
};

struct ExpansionLp {
  LinearProgram program;
  std::vector<ExpansionVariable> variables;
};

struct ExpansionLpOptions {
  /// Drop columns of commodity i that cannot lie on any (s_i, 0) -> (t_i, T)
  /// path in the expansion. Such columns only carry circulations, so the
  /// feasible set projected onto useful flow is unchanged.
  bool prune_unreachable{true};
};

/// Columns: movement copies by (arc, time, commodity), then holdover arcs by
/// (node, time, commodity). Rows: one capacity row per movement copy, then one
/// conservation row per (commodity, node copy), with the demand at (t_i, T)
/// and supply at (s_i, 0) on the right-hand side.
ExpansionLp feasibility_lp_from_expansion(const ExpandedNetwork& expansion,
                                          const ExpansionLpOptions& options = {});

/// Maps an LP assignment back onto the expansion.
StaticSolution to_static_solution(const ExpansionLp& lp, const std::vector<Rational>& assignment);

/// Outcome of one feasibility probe at an integer horizon.
struct HorizonProbe {
  std::int64_t horizon{};
  StorageMode mode{};
  bool feasible{};
  std::optional<FlowOverTime> witness;  // extracted flow when feasible
  std::size_t variables{};
  std::size_t constraints{};
  std::size_t pivots{};
};

struct SolveOptions {
  LpOptions lp;
  ExpansionLpOptions expansion;
};

HorizonProbe probe_horizon(const Instance& instance, std::int64_t horizon, StorageMode mode,
                           const SolveOptions& options = {});

struct HorizonSearch {
  std::optional<std::int64_t> horizon;  // empty: no feasible T <= T_max
  std::vector<HorizonProbe> probes;     // in the order they were solved
};

/// Smallest integer T <= max_horizon whose expansion is feasible. Starts at
/// the largest shortest transit L over commodities (at least 1), probes
/// L+1, L+2, L+4, ... until feasible, then bisects. Throws std::invalid_argument on invalid instances.
HorizonSearch min_feasible_horizon(const Instance& instance, StorageMode mode,
                                   std::int64_t max_horizon, const SolveOptions& options = {});

class NoHorizonFound : public std::runtime_error {
 public:
  NoHorizonFound(StorageMode mode, std::int64_t max_horizon);
};

struct SpeedupReport {
  std::int64_t min_horizon_with_storage{};
  std::int64_t min_horizon_without_storage{};
  Rational ratio;  // without / with
  std::vector<HorizonProbe> probes;
};

/// Throws NoHorizonFound when either search exceeds max_horizon.
SpeedupReport speedup_ratio(const Instance& instance, std::int64_t max_horizon,
                            const SolveOptions& options = {});

struct GapReport {
  int k{};
  std::int64_t min_horizon_with_storage{};
  std::int64_t min_horizon_without_storage{};
  Rational ratio;
};

struct GapSweepOptions {
  SolveOptions solve;
  bool parallel{false};
  /// Called once per k with every probe of that k (from the calling thread,
  /// in increasing k).
  std::function<void(int k, const Instance&, const std::vector<HorizonProbe>&)> on_probes;
};

/// Speed-up on the cycle family for k in [k_min, k_max].
std::vector<GapReport> gap_sweep(int k_min, int k_max, const GapSweepOptions& options = {});

/// "k,minT_with,minT_without,ratio" with the ratio written as
/// minT_without/minT_with.
std::string gap_csv(const std::vector<GapReport>& reports);

}  // namespace qflow
