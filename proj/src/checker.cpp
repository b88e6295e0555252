#include "qflow/checker.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace qflow {
namespace {

struct IncidentArc {
  const Arc* arc;
  const StepFunction* rate;  // nullptr means zero
};

// Arcs entering and leaving `node` with the rate functions of one commodity.
struct NodeIncidence {
  std::vector<IncidentArc> in;
  std::vector<IncidentArc> out;
};

NodeIncidence incidence(const FlowOverTime& flow, const Instance& instance, const NodeId& node,
                        CommodityIndex commodity) {
  NodeIncidence result;
  for (const auto& arc : instance.network.arcs) {
    const StepFunction* rate = flow.rate(arc.id, commodity);
    if (!rate) continue;
    if (arc.head == node) result.in.push_back({&arc, rate});
    if (arc.tail == node) result.out.push_back({&arc, rate});
  }
  return result;
}

// Cumulative inflow through theta - transit minus cumulative outflow through
// theta.
Rational balance(const NodeIncidence& arcs, const Rational& theta) {
  Rational value = 0;
  for (const auto& [arc, rate] : arcs.in) {
    const Rational shifted = theta - arc->transit;
    if (shifted > 0) value += cumulative(*rate, shifted);
  }
  for (const auto& [arc, rate] : arcs.out) value -= cumulative(*rate, theta);
  return value;
}

// Points in [0, T] where the balance may change slope. The balance is
// continuous and linear in between, so these points decide its sign.
std::set<Rational> balance_breakpoints(const NodeIncidence& arcs, const Rational& horizon) {
  std::set<Rational> points{Rational(0), horizon};
  auto add = [&](const Rational& t) {
    if (t >= 0 && t <= horizon) points.insert(t);
  };
  for (const auto& [arc, rate] : arcs.in) {
    for (const auto& piece : rate->pieces()) {
      add(piece.from + arc->transit);
      add(piece.to + arc->transit);
    }
  }
  for (const auto& [arc, rate] : arcs.out) {
    for (const auto& piece : rate->pieces()) {
      add(piece.from);
      add(piece.to);
    }
  }
  return points;
}

}  // namespace

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Capacity:
      return "capacity";
    case ViolationKind::Conservation:
      return "conservation";
    case ViolationKind::StrictConservation:
      return "strict-conservation";
    case ViolationKind::Demand:
      return "demand";
  }
  return "unknown";
}

std::size_t ViolationReport::count(ViolationKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; }));
}

void ViolationReport::append(const ViolationReport& other) {
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
}

std::string ViolationReport::to_json_lines() const {
  std::string lines;
  for (const auto& v : violations) {
    nlohmann::ordered_json entry;
    entry["kind"] = std::string(to_string(v.kind));
    entry["location"] = v.location;
    entry["commodity"] = v.commodity ? nlohmann::ordered_json(*v.commodity) : nullptr;
    entry["from"] = to_string(v.from);
    entry["to"] = to_string(v.to);
    entry["magnitude"] = to_string(v.magnitude);
    lines += entry.dump();
    lines += '\n';
  }
  return lines;
}

Rational cumulative(const StepFunction& rate, const Rational& theta) {
  if (theta < 0) throw std::invalid_argument("cumulative flow queried at negative time");
  Rational total = 0;
  for (const auto& piece : rate.pieces()) {
    if (theta <= piece.from) break;
    const Rational& end = theta < piece.to ? theta : piece.to;
    total += piece.rate * (end - piece.from);
  }
  return total;
}

void check_structure(const FlowOverTime& flow, const Instance& instance) {
  for (const auto& [key, function] : flow.rates()) {
    if (!instance.network.arc_index(key.arc)) {
      throw std::invalid_argument("flow references unknown arc '" + key.arc + "'");
    }
    if (key.commodity >= instance.commodities.size()) {
      throw std::invalid_argument("flow references unknown commodity " +
                                  std::to_string(key.commodity));
    }
    if (function.horizon() != flow.horizon()) {
      throw std::invalid_argument("rate function horizon differs from flow horizon");
    }
  }
}

ViolationReport check_capacity(const FlowOverTime& flow, const Instance& instance) {
  check_structure(flow, instance);
  ViolationReport report;
  const std::size_t commodity_count = instance.commodities.size();

  for (const auto& arc : instance.network.arcs) {
    std::vector<const StepFunction*> rates;
    std::set<Rational> points{Rational(0), flow.horizon()};
    for (CommodityIndex i = 0; i < commodity_count; ++i) {
      if (const StepFunction* rate = flow.rate(arc.id, i)) {
        rates.push_back(rate);
        for (const auto& piece : rate->pieces()) {
          points.insert(piece.from);
          points.insert(piece.to);
        }
      }
    }
    if (rates.empty()) continue;

    // Walk elementary intervals, merging neighbours with equal total rate so
    // each violation covers a maximal constant stretch.
    std::optional<Violation> open;
    auto close = [&] {
      if (open) report.violations.push_back(std::move(*open));
      open.reset();
    };
    for (auto it = points.begin(); std::next(it) != points.end(); ++it) {
      const Rational& start = *it;
      const Rational& end = *std::next(it);
      Rational total = 0;
      for (const StepFunction* rate : rates) total += rate->rate_at(start);
      const Rational excess = total - arc.capacity;
      if (excess <= 0) {
        close();
        continue;
      }
      if (open && open->to == start && open->magnitude == excess) {
        open->to = end;
        continue;
      }
      close();
      open = Violation{ViolationKind::Capacity, arc.id, std::nullopt, start, end, excess};
    }
    close();
  }
  return report;
}

ViolationReport check_conservation(const FlowOverTime& flow, const Instance& instance,
                                   StorageMode mode) {
  check_structure(flow, instance);
  ViolationReport report;
  for (CommodityIndex i = 0; i < instance.commodities.size(); ++i) {
    const Commodity& commodity = instance.commodities[i];
    for (const auto& node : instance.network.nodes) {
      if (node == commodity.source) continue;
      const bool strict =
          mode == StorageMode::NoIntermediateStorage && node != commodity.sink;
      const NodeIncidence arcs = incidence(flow, instance, node, i);
      if (arcs.in.empty() && arcs.out.empty()) continue;
      for (const auto& theta : balance_breakpoints(arcs, flow.horizon())) {
        const Rational value = balance(arcs, theta);
        if (value < 0) {
          report.violations.push_back(
              Violation{ViolationKind::Conservation, node, i, theta, theta, -value});
        } else if (strict && value > 0) {
          report.violations.push_back(
              Violation{ViolationKind::StrictConservation, node, i, theta, theta, value});
        }
      }
    }
  }
  return report;
}

ViolationReport check_demands(const FlowOverTime& flow, const Instance& instance) {
  check_structure(flow, instance);
  ViolationReport report;
  for (CommodityIndex i = 0; i < instance.commodities.size(); ++i) {
    const Commodity& commodity = instance.commodities[i];
    for (const auto& node : instance.network.nodes) {
      Rational target = 0;
      if (node == commodity.sink) target = commodity.demand;
      if (node == commodity.source) target = -commodity.demand;
      const Rational value = balance(incidence(flow, instance, node, i), flow.horizon());
      if (value != target) {
        report.violations.push_back(Violation{ViolationKind::Demand, node, i, flow.horizon(),
                                              flow.horizon(), abs(value - target)});
      }
    }
  }
  return report;
}

ViolationReport check_flow(const FlowOverTime& flow, const Instance& instance, StorageMode mode) {
  ViolationReport report = check_capacity(flow, instance);
  report.append(check_conservation(flow, instance, mode));
  report.append(check_demands(flow, instance));
  return report;
}

}  // namespace qflow
