#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qflow/core.hpp"

namespace qflow {

struct ExpansionConfig {
  std::int64_t horizon{1};  // T, in whole time units
  StorageMode mode{StorageMode::WithStorage};
  // The step length is one time unit; transits are integral.
};

/// Copy of arc `arc` entering at time `time`:
/// (tail, time) -> (head, time + transit), capacity u_a per unit step.
struct MovementCopy {
  std::size_t arc{};
  std::int64_t time{};
};

/// Storage arc (node, time) -> (node, time + 1). Unbounded; `usable[i]` tells
/// whether commodity i may hold flow here.
struct HoldoverArc {
  std::size_t node{};
  std::int64_t time{};
  std::vector<bool> usable;
};

/// Static time-expanded network for an integer horizon T with node copies
/// (v, 0..T). Commodity i has supply d_i at (s_i, 0) and demand d_i at
/// (t_i, T).
class ExpandedNetwork {
 public:
  ExpandedNetwork(Instance instance, ExpansionConfig config);

  const Instance& instance() const { return instance_; }
  std::int64_t horizon() const { return config_.horizon; }
  StorageMode mode() const { return config_.mode; }

  std::size_t node_copy_count() const;
  std::size_t node_copy(std::size_t node, std::int64_t time) const;

  const std::vector<MovementCopy>& movement_copies() const { return movements_; }
  const std::vector<HoldoverArc>& holdover_arcs() const { return holdovers_; }

  /// Index into movement_copies(), or npos when the copy does not exist.
  std::size_t movement_index(std::size_t arc, std::int64_t time) const;
  /// Index into holdover_arcs(), or npos.
  std::size_t holdover_index(std::size_t node, std::int64_t time) const;

  std::size_t source_node(CommodityIndex i) const { return sources_[i]; }
  std::size_t sink_node(CommodityIndex i) const { return sinks_[i]; }

  /// Human-readable listing of copies and masks (debug output).
  std::string dump() const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  Instance instance_;
  ExpansionConfig config_;
  std::vector<std::size_t> sources_;
  std::vector<std::size_t> sinks_;
  std::vector<MovementCopy> movements_;
  std::vector<std::size_t> movement_offset_;  // first copy of each arc
  std::vector<HoldoverArc> holdovers_;
};

/// Throws std::invalid_argument when the instance fails validation or the
/// horizon is below 1.
ExpandedNetwork build_time_expanded(const Instance& instance, const ExpansionConfig& config);

/// Flow on the static expansion: (copy index, commodity) -> amount.
struct StaticSolution {
  std::map<std::pair<std::size_t, CommodityIndex>, Rational> movement;
  std::map<std::pair<std::size_t, CommodityIndex>, Rational> holdover;
};

/// Rate of commodity i on arc a over [t, t+1) is the amount on copy (a, t).
/// Holdover amounts are node storage and produce no rates.
FlowOverTime extract_flow_over_time(const StaticSolution& solution,
                                    const ExpandedNetwork& expansion);

/// Inverse of extract_flow_over_time for flows whose rates are constant on
/// unit intervals. Holdover amounts are recovered from cumulative node
/// balances. Throws std::invalid_argument if a rate changes inside a unit
/// interval, the horizons differ, or flow would use a missing copy.
StaticSolution discretize_flow(const FlowOverTime& flow, const ExpandedNetwork& expansion);

/// Checks `solution` against the expansion's capacity, storage mask and
/// conservation rules exactly. Returns human-readable defects.
std::vector<std::string> static_solution_defects(const StaticSolution& solution,
                                                 const ExpandedNetwork& expansion);

}  // namespace qflow
