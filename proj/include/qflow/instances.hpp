#pragma once

#include <cstdint>

#include "qflow/core.hpp"

namespace qflow {

/// Directed cycle v0 -> v1 -> ... -> v_{k-1} -> v0 with unit capacities and
/// transits. Commodity i runs from v_i to v_{(i-1) mod k}; commodity 0 has
/// demand d0, all others demand 1.
struct CycleParams {
  int k{3};
  Rational d0{2};
};

Instance cycle_instance(const CycleParams& params);

/// Horizon k+1 schedule on cycle_instance(k) that needs storage: commodity 0
/// streams for two units of time, and commodities 2..k-1 pause one unit at v0
/// to let it pass.
FlowOverTime lemma1_flow(int k);

/// Horizon 2k-1 schedule on cycle_instance(k) without any waiting: every
/// commodity sends one unit during [0, 1); commodity 0 sends its second unit
/// during [k-1, k), after the first wave has cleared the cycle.
FlowOverTime wave_schedule_no_storage(int k);

struct RandomInstanceBounds {
  int node_max{5};
  int arc_max{8};
  int commodity_max{3};
  std::int64_t tau_max{3};
};

/// Deterministic in `seed`. Capacities are integers in [1, 3], demands are
/// multiples of 1/2 in [1/2, 3], transits in [0, tau_max]. Each commodity is
/// drawn among reachable (source, sink) pairs. Throws std::runtime_error if
/// no usable network turns up within a fixed number of draws.
Instance random_instance(std::uint64_t seed, const RandomInstanceBounds& bounds);

}  // namespace qflow
