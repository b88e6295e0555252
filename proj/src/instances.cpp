#include "qflow/instances.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace qflow {
namespace {

void require_cycle_size(int k) {
  if (k < 3) throw std::invalid_argument("cycle family needs k >= 3");
}

std::string node_name(int j) { return "v" + std::to_string(j); }
std::string arc_name(int j) { return "a" + std::to_string(j); }

void send_unit(FlowOverTime& flow, int arc, CommodityIndex commodity, int start) {
  flow.add_piece(arc_name(arc), commodity, Piece{Rational(start), Rational(start + 1), Rational(1)});
}

}  // namespace

Instance cycle_instance(const CycleParams& params) {
  require_cycle_size(params.k);
  if (params.d0 <= 0) throw std::invalid_argument("d0 must be positive");
  const int k = params.k;
  Instance instance;
  for (int j = 0; j < k; ++j) instance.network.nodes.push_back(node_name(j));
  for (int j = 0; j < k; ++j) {
    instance.network.arcs.push_back(
        Arc{arc_name(j), node_name(j), node_name((j + 1) % k), Rational(1), 1});
  }
  for (int i = 0; i < k; ++i) {
    instance.commodities.push_back(
        Commodity{node_name(i), node_name((i + k - 1) % k), i == 0 ? params.d0 : Rational(1)});
  }
  return instance;
}

FlowOverTime lemma1_flow(int k) {
  require_cycle_size(k);
  FlowOverTime flow(Rational(k + 1));
  // Commodity 0: a_0 .. a_{k-2}, two units back to back.
  for (int j = 0; j <= k - 2; ++j) {
    flow.add_piece(arc_name(j), 0, Piece{Rational(j), Rational(j + 2), Rational(1)});
  }
  for (int i = 1; i < k; ++i) {
    // v_i -> ... -> v_{k-1} -> v0 without waiting.
    for (int m = 0; i + m <= k - 1; ++m) send_unit(flow, i + m, i, m);
    // Arrived at v0 during [k-i, k-i+1); hold one unit, then a_0 .. a_{i-2}.
    for (int j = 0; j <= i - 2; ++j) send_unit(flow, j, i, k - i + 1 + j);
  }
  return flow;
}

FlowOverTime wave_schedule_no_storage(int k) {
  require_cycle_size(k);
  FlowOverTime flow(Rational(2 * k - 1));
  for (int i = 0; i < k; ++i) {
    // The m-th arc on commodity i's path is a_{(i+m) mod k}; the path has k-1 arcs.
    for (int m = 0; m <= k - 2; ++m) send_unit(flow, (i + m) % k, i, m);
  }
  for (int m = 0; m <= k - 2; ++m) send_unit(flow, m, 0, k - 1 + m);
  return flow;
}

Instance random_instance(std::uint64_t seed, const RandomInstanceBounds& bounds) {
  if (bounds.node_max < 1 || bounds.arc_max < 1 || bounds.commodity_max < 1 ||
      bounds.tau_max < 0) {
    throw std::invalid_argument("random instance bounds must be positive");
  }
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };

  constexpr int kMaxDraws = 1000;
  for (int draw = 0; draw < kMaxDraws; ++draw) {
    if (bounds.node_max < 2) break;
    Instance instance;
    const auto node_count = uniform(2, bounds.node_max);
    for (int v = 0; v < node_count; ++v) instance.network.nodes.push_back(node_name(v));
    const auto arc_count = uniform(1, bounds.arc_max);
    for (int j = 0; j < arc_count; ++j) {
      const auto tail = uniform(0, node_count - 1);
      auto head = uniform(0, node_count - 2);
      if (head >= tail) ++head;
      instance.network.arcs.push_back(Arc{arc_name(j), node_name(static_cast<int>(tail)),
                                          node_name(static_cast<int>(head)),
                                          Rational(uniform(1, 3)), uniform(0, bounds.tau_max)});
    }

    std::vector<std::pair<int, int>> pairs;
    for (int s = 0; s < node_count; ++s) {
      const auto distance = transit_distances(instance.network, static_cast<std::size_t>(s));
      for (int t = 0; t < node_count; ++t) {
        if (t != s && distance[static_cast<std::size_t>(t)]) pairs.emplace_back(s, t);
      }
    }
    if (pairs.empty()) continue;

    const auto commodity_count = uniform(1, bounds.commodity_max);
    for (int i = 0; i < commodity_count; ++i) {
      const auto& [s, t] = pairs[static_cast<std::size_t>(
          uniform(0, static_cast<std::int64_t>(pairs.size()) - 1))];
      instance.commodities.push_back(
          Commodity{node_name(s), node_name(t), make_rational(uniform(1, 6), 2)});
    }
    return instance;
  }
  throw std::runtime_error("random_instance: no usable network within the draw budget");
}

}  // namespace qflow
