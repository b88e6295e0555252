#include "qflow/core.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <stdexcept>

namespace qflow {

std::optional<std::size_t> Network::node_index(std::string_view id) const {
  const auto it = std::find(nodes.begin(), nodes.end(), id);
  if (it == nodes.end()) return std::nullopt;
  return static_cast<std::size_t>(it - nodes.begin());
}

std::optional<std::size_t> Network::arc_index(std::string_view id) const {
  const auto it =
      std::find_if(arcs.begin(), arcs.end(), [&](const Arc& arc) { return arc.id == id; });
  if (it == arcs.end()) return std::nullopt;
  return static_cast<std::size_t>(it - arcs.begin());
}

Rational Instance::total_demand() const {
  Rational total = 0;
  for (const auto& commodity : commodities) total += commodity.demand;
  return total;
}

std::string_view to_string(StorageMode mode) {
  switch (mode) {
    case StorageMode::WithStorage:
      return "with-storage";
    case StorageMode::NoIntermediateStorage:
      return "no-storage";
  }
  return "unknown";
}

std::optional<StorageMode> parse_storage_mode(std::string_view text) {
  if (text == "with-storage") return StorageMode::WithStorage;
  if (text == "no-storage") return StorageMode::NoIntermediateStorage;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// StepFunction

StepFunction::StepFunction(Rational horizon, std::vector<Piece> pieces)
    : horizon_(std::move(horizon)), pieces_(std::move(pieces)) {
  if (horizon_ <= 0) throw std::invalid_argument("step function horizon must be positive");
  Rational previous_end = 0;
  for (const auto& piece : pieces_) {
    if (piece.from < 0) throw std::invalid_argument("piece starts before time 0");
    if (piece.to <= piece.from) throw std::invalid_argument("piece interval is empty");
    if (piece.to > horizon_) throw std::invalid_argument("piece extends beyond the horizon");
    if (piece.rate < 0) throw std::invalid_argument("flow rate must be nonnegative");
    if (piece.from < previous_end) {
      throw std::invalid_argument("pieces overlap or are out of order");
    }
    previous_end = piece.to;
  }
}

Rational StepFunction::rate_at(const Rational& t) const {
  for (const auto& piece : pieces_) {
    if (t < piece.from) break;
    if (t < piece.to) return piece.rate;
  }
  return 0;
}

StepFunction StepFunction::with_horizon(const Rational& new_horizon) const {
  std::vector<Piece> clipped;
  for (const auto& piece : pieces_) {
    if (piece.from >= new_horizon) break;
    Piece copy = piece;
    if (copy.to > new_horizon) copy.to = new_horizon;
    clipped.push_back(std::move(copy));
  }
  return StepFunction(new_horizon, std::move(clipped));
}

// ---------------------------------------------------------------------------
// FlowOverTime

FlowOverTime::FlowOverTime(Rational horizon) : horizon_(std::move(horizon)) {
  if (horizon_ <= 0) throw std::invalid_argument("flow horizon must be positive");
}

void FlowOverTime::set_rate(const ArcId& arc, CommodityIndex commodity, StepFunction rate) {
  if (rate.horizon() != horizon_) {
    throw std::invalid_argument("rate function horizon differs from flow horizon");
  }
  rates_.insert_or_assign(RateKey{arc, commodity}, std::move(rate));
}

void FlowOverTime::add_piece(const ArcId& arc, CommodityIndex commodity, Piece piece) {
  const RateKey key{arc, commodity};
  std::vector<Piece> pieces;
  if (const auto it = rates_.find(key); it != rates_.end()) pieces = it->second.pieces();
  if (!pieces.empty() && pieces.back().to == piece.from && pieces.back().rate == piece.rate) {
    pieces.back().to = piece.to;
  } else {
    pieces.push_back(std::move(piece));
  }
  rates_.insert_or_assign(key, StepFunction(horizon_, std::move(pieces)));
}

const StepFunction* FlowOverTime::rate(const ArcId& arc, CommodityIndex commodity) const {
  const auto it = rates_.find(RateKey{arc, commodity});
  return it == rates_.end() ? nullptr : &it->second;
}

FlowOverTime FlowOverTime::with_horizon(const Rational& new_horizon) const {
  FlowOverTime result(new_horizon);
  for (const auto& [key, function] : rates_) {
    auto clipped = function.with_horizon(new_horizon);
    if (!clipped.pieces().empty()) result.rates_.emplace(key, std::move(clipped));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Validation and shortest paths

ValidationReport validate_instance(const Instance& instance) {
  ValidationReport report;
  auto defect = [&](std::string text) { report.defects.push_back(std::move(text)); };
  const Network& network = instance.network;

  std::set<NodeId> seen_nodes;
  for (const auto& node : network.nodes) {
    if (node.empty()) defect("empty node identifier");
    if (!seen_nodes.insert(node).second) defect("duplicate node '" + node + "'");
  }
  std::set<ArcId> seen_arcs;
  bool arcs_ok = true;
  for (const auto& arc : network.arcs) {
    const std::string where = "arc '" + arc.id + "'";
    if (!seen_arcs.insert(arc.id).second) defect("duplicate arc id: " + where);
    if (!seen_nodes.contains(arc.tail)) {
      defect("unknown tail node '" + arc.tail + "' on " + where);
      arcs_ok = false;
    }
    if (!seen_nodes.contains(arc.head)) {
      defect("unknown head node '" + arc.head + "' on " + where);
      arcs_ok = false;
    }
    if (arc.tail == arc.head) defect("self-loop: " + where);
    if (arc.capacity < 0) defect("capacity must be nonnegative: " + where);
    if (arc.transit < 0) defect("transit must be nonnegative: " + where);
  }

  for (std::size_t i = 0; i < instance.commodities.size(); ++i) {
    const auto& commodity = instance.commodities[i];
    const std::string where = "commodity " + std::to_string(i);
    bool endpoints_ok = true;
    if (!seen_nodes.contains(commodity.source)) {
      defect("unknown source node '" + commodity.source + "' on " + where);
      endpoints_ok = false;
    }
    if (!seen_nodes.contains(commodity.sink)) {
      defect("unknown sink node '" + commodity.sink + "' on " + where);
      endpoints_ok = false;
    }
    if (commodity.source == commodity.sink) {
      defect("source equals sink on " + where);
      endpoints_ok = false;
    }
    if (commodity.demand < 0) defect("demand must be nonnegative on " + where);
    if (endpoints_ok && arcs_ok && !shortest_transit(network, commodity.source, commodity.sink)) {
      defect("sink unreachable on " + where + " (" + commodity.source + " -> " +
             commodity.sink + ")");
    }
  }
  return report;
}

std::vector<std::optional<std::int64_t>> transit_distances(const Network& network,
                                                           std::size_t source, bool reverse) {
  const std::size_t n = network.nodes.size();
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> adjacency(n);
  for (const auto& arc : network.arcs) {
    const auto tail = network.node_index(arc.tail);
    const auto head = network.node_index(arc.head);
    if (!tail || !head) throw std::invalid_argument("arc '" + arc.id + "' has unknown endpoint");
    if (reverse) {
      adjacency[*head].emplace_back(*tail, arc.transit);
    } else {
      adjacency[*tail].emplace_back(*head, arc.transit);
    }
  }

  std::vector<std::optional<std::int64_t>> distance(n);
  using Entry = std::pair<std::int64_t, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  distance[source] = 0;
  queue.emplace(0, source);
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (d != *distance[v]) continue;
    for (const auto& [w, transit] : adjacency[v]) {
      const std::int64_t candidate = d + transit;
      if (!distance[w] || candidate < *distance[w]) {
        distance[w] = candidate;
        queue.emplace(candidate, w);
      }
    }
  }
  return distance;
}

std::optional<std::int64_t> shortest_transit(const Network& network, std::string_view s,
                                             std::string_view t) {
  const auto source = network.node_index(s);
  const auto target = network.node_index(t);
  if (!source) throw std::invalid_argument("unknown node '" + std::string(s) + "'");
  if (!target) throw std::invalid_argument("unknown node '" + std::string(t) + "'");
  return transit_distances(network, *source)[*target];
}

}  // namespace qflow
