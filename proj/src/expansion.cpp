#include "qflow/expansion.hpp"

#include <sstream>
#include <stdexcept>

namespace qflow {

ExpandedNetwork::ExpandedNetwork(Instance instance, ExpansionConfig config)
    : instance_(std::move(instance)), config_(config) {
  if (config_.horizon < 1) throw std::invalid_argument("time horizon must be at least 1");
  const ValidationReport validation = validate_instance(instance_);
  if (!validation.ok()) {
    throw std::invalid_argument("invalid instance: " + validation.defects.front());
  }
  const Network& network = instance_.network;
  const std::int64_t T = config_.horizon;

  for (const auto& commodity : instance_.commodities) {
    sources_.push_back(*network.node_index(commodity.source));
    sinks_.push_back(*network.node_index(commodity.sink));
  }

  for (std::size_t a = 0; a < network.arcs.size(); ++a) {
    movement_offset_.push_back(movements_.size());
    for (std::int64_t t = 0; t + network.arcs[a].transit <= T - 1; ++t) {
      movements_.push_back(MovementCopy{a, t});
    }
  }
  movement_offset_.push_back(movements_.size());

  const std::size_t commodity_count = instance_.commodities.size();
  for (std::size_t v = 0; v < network.nodes.size(); ++v) {
    std::vector<bool> usable(commodity_count, true);
    if (config_.mode == StorageMode::NoIntermediateStorage) {
      for (std::size_t i = 0; i < commodity_count; ++i) {
        usable[i] = v == sources_[i] || v == sinks_[i];
      }
    }
    for (std::int64_t t = 0; t < T; ++t) holdovers_.push_back(HoldoverArc{v, t, usable});
  }
}

std::size_t ExpandedNetwork::node_copy_count() const {
  return instance_.network.nodes.size() * static_cast<std::size_t>(config_.horizon + 1);
}

std::size_t ExpandedNetwork::node_copy(std::size_t node, std::int64_t time) const {
  return node * static_cast<std::size_t>(config_.horizon + 1) + static_cast<std::size_t>(time);
}

std::size_t ExpandedNetwork::movement_index(std::size_t arc, std::int64_t time) const {
  if (arc >= instance_.network.arcs.size() || time < 0) return npos;
  const std::size_t index = movement_offset_[arc] + static_cast<std::size_t>(time);
  return index < movement_offset_[arc + 1] ? index : npos;
}

std::size_t ExpandedNetwork::holdover_index(std::size_t node, std::int64_t time) const {
  if (node >= instance_.network.nodes.size() || time < 0 || time >= config_.horizon) return npos;
  return node * static_cast<std::size_t>(config_.horizon) + static_cast<std::size_t>(time);
}

std::string ExpandedNetwork::dump() const {
  const Network& network = instance_.network;
  std::ostringstream out;
  out << "horizon " << config_.horizon << "\n";
  out << "mode " << to_string(config_.mode) << "\n";
  out << "node_copies " << node_copy_count() << "\n";
  out << "movement_copies " << movements_.size() << "\n";
  out << "holdover_arcs " << holdovers_.size() << "\n";
  for (std::size_t i = 0; i < instance_.commodities.size(); ++i) {
    out << "commodity " << i << " supply (" << network.nodes[sources_[i]] << ",0) demand ("
        << network.nodes[sinks_[i]] << "," << config_.horizon << ") amount "
        << to_string(instance_.commodities[i].demand) << "\n";
  }
  for (const auto& copy : movements_) {
    const Arc& arc = network.arcs[copy.arc];
    out << "move " << arc.id << "@" << copy.time << " (" << arc.tail << "," << copy.time
        << ")->(" << arc.head << "," << copy.time + arc.transit << ") cap "
        << to_string(arc.capacity) << "\n";
  }
  for (const auto& hold : holdovers_) {
    out << "hold " << network.nodes[hold.node] << "@" << hold.time << " mask ";
    for (const bool usable : hold.usable) out << (usable ? '1' : '0');
    out << "\n";
  }
  return out.str();
}

ExpandedNetwork build_time_expanded(const Instance& instance, const ExpansionConfig& config) {
  return ExpandedNetwork(instance, config);
}

FlowOverTime extract_flow_over_time(const StaticSolution& solution,
                                    const ExpandedNetwork& expansion) {
  const Instance& instance = expansion.instance();
  const auto& copies = expansion.movement_copies();
  FlowOverTime flow(Rational(expansion.horizon()));
  for (const auto& [key, amount] : solution.movement) {
    const auto& [copy_index, commodity] = key;
    if (copy_index >= copies.size()) throw std::invalid_argument("unknown movement copy");
    if (commodity >= instance.commodities.size()) throw std::invalid_argument("unknown commodity");
    if (amount < 0) throw std::invalid_argument("negative flow on a movement copy");
    if (amount == 0) continue;
    const MovementCopy& copy = copies[copy_index];
    // Map order is (arc, time, commodity) within each commodity's arc, so
    // pieces arrive sorted per (arc, commodity).
    flow.add_piece(instance.network.arcs[copy.arc].id, commodity,
                   Piece{Rational(copy.time), Rational(copy.time + 1), amount});
  }
  for (const auto& [key, amount] : solution.holdover) {
    if (key.first >= expansion.holdover_arcs().size()) {
      throw std::invalid_argument("unknown holdover arc");
    }
  }
  return flow;
}

StaticSolution discretize_flow(const FlowOverTime& flow, const ExpandedNetwork& expansion) {
  const Instance& instance = expansion.instance();
  const Network& network = instance.network;
  const std::int64_t T = expansion.horizon();
  if (flow.horizon() != T) throw std::invalid_argument("flow horizon differs from expansion");

  StaticSolution solution;
  for (const auto& [key, function] : flow.rates()) {
    const auto arc = network.arc_index(key.arc);
    if (!arc) throw std::invalid_argument("flow references unknown arc '" + key.arc + "'");
    if (key.commodity >= instance.commodities.size()) {
      throw std::invalid_argument("flow references unknown commodity");
    }
    for (const auto& piece : function.pieces()) {
      if (piece.from.get_den() != 1 || piece.to.get_den() != 1) {
        throw std::invalid_argument("rate is not constant on unit intervals");
      }
      const std::int64_t from = piece.from.get_num().get_si();
      const std::int64_t to = piece.to.get_num().get_si();
      for (std::int64_t t = from; t < to; ++t) {
        if (piece.rate == 0) continue;
        const std::size_t copy = expansion.movement_index(*arc, t);
        if (copy == ExpandedNetwork::npos) {
          throw std::invalid_argument("flow on arc '" + key.arc + "' at time " +
                                      std::to_string(t) + " arrives after the horizon");
        }
        solution.movement[{copy, key.commodity}] = piece.rate;
      }
    }
  }

  // Stored amount at (v, t) -> (v, t+1) is what has arrived (plus supply)
  // through time t minus what has departed through time t.
  const std::size_t n = network.nodes.size();
  const std::size_t commodity_count = instance.commodities.size();
  std::vector<std::vector<Rational>> net(commodity_count * n,
                                         std::vector<Rational>(static_cast<std::size_t>(T + 1)));
  for (const auto& [key, amount] : solution.movement) {
    const MovementCopy& copy = expansion.movement_copies()[key.first];
    const Arc& arc = network.arcs[copy.arc];
    const std::size_t tail = *network.node_index(arc.tail);
    const std::size_t head = *network.node_index(arc.head);
    net[key.second * n + tail][static_cast<std::size_t>(copy.time)] -= amount;
    net[key.second * n + head][static_cast<std::size_t>(copy.time + arc.transit)] += amount;
  }
  for (std::size_t i = 0; i < commodity_count; ++i) {
    net[i * n + expansion.source_node(i)][0] += instance.commodities[i].demand;
    for (std::size_t v = 0; v < n; ++v) {
      Rational stored = 0;
      for (std::int64_t t = 0; t < T; ++t) {
        stored += net[i * n + v][static_cast<std::size_t>(t)];
        if (stored != 0) solution.holdover[{expansion.holdover_index(v, t), i}] = stored;
      }
    }
  }
  return solution;
}

std::vector<std::string> static_solution_defects(const StaticSolution& solution,
                                                 const ExpandedNetwork& expansion) {
  const Instance& instance = expansion.instance();
  const Network& network = instance.network;
  const std::int64_t T = expansion.horizon();
  const std::size_t commodity_count = instance.commodities.size();
  std::vector<std::string> defects;

  std::vector<Rational> load(expansion.movement_copies().size());
  // balance[i][copy] = inflow - outflow at node copy for commodity i
  std::vector<std::vector<Rational>> balance(commodity_count,
                                             std::vector<Rational>(expansion.node_copy_count()));
  for (const auto& [key, amount] : solution.movement) {
    const auto& [index, i] = key;
    if (index >= load.size() || i >= commodity_count) {
      defects.push_back("unknown movement copy or commodity");
      continue;
    }
    if (amount < 0) defects.push_back("negative movement amount at copy " + std::to_string(index));
    const MovementCopy& copy = expansion.movement_copies()[index];
    const Arc& arc = network.arcs[copy.arc];
    load[index] += amount;
    balance[i][expansion.node_copy(*network.node_index(arc.tail), copy.time)] -= amount;
    balance[i][expansion.node_copy(*network.node_index(arc.head), copy.time + arc.transit)] +=
        amount;
  }
  for (const auto& [key, amount] : solution.holdover) {
    const auto& [index, i] = key;
    if (index >= expansion.holdover_arcs().size() || i >= commodity_count) {
      defects.push_back("unknown holdover arc or commodity");
      continue;
    }
    const HoldoverArc& hold = expansion.holdover_arcs()[index];
    if (amount < 0) defects.push_back("negative holdover at " + network.nodes[hold.node]);
    if (amount != 0 && !hold.usable[i]) {
      defects.push_back("commodity " + std::to_string(i) + " stores at " +
                        network.nodes[hold.node] + "@" + std::to_string(hold.time));
    }
    balance[i][expansion.node_copy(hold.node, hold.time)] -= amount;
    balance[i][expansion.node_copy(hold.node, hold.time + 1)] += amount;
  }
  for (std::size_t index = 0; index < load.size(); ++index) {
    const Arc& arc = network.arcs[expansion.movement_copies()[index].arc];
    if (load[index] > arc.capacity) {
      defects.push_back("capacity exceeded on " + arc.id + "@" +
                        std::to_string(expansion.movement_copies()[index].time));
    }
  }
  for (std::size_t i = 0; i < commodity_count; ++i) {
    for (std::size_t v = 0; v < network.nodes.size(); ++v) {
      for (std::int64_t t = 0; t <= T; ++t) {
        Rational expected = 0;
        if (v == expansion.source_node(i) && t == 0) expected -= instance.commodities[i].demand;
        if (v == expansion.sink_node(i) && t == T) expected += instance.commodities[i].demand;
        if (balance[i][expansion.node_copy(v, t)] != expected) {
          defects.push_back("conservation broken for commodity " + std::to_string(i) + " at (" +
                            network.nodes[v] + "," + std::to_string(t) + ")");
        }
      }
    }
  }
  return defects;
}

}  // namespace qflow
