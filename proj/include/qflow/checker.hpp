#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qflow/core.hpp"

namespace qflow {

enum class ViolationKind { Capacity, Conservation, StrictConservation, Demand };

std::string_view to_string(ViolationKind kind);

/// One violated constraint. `location` is an arc id (capacity) or a node id.
/// `commodity` is empty for aggregate (capacity) violations. A time point is
/// reported as from == to.
struct Violation {
  ViolationKind kind{};
  std::string location;
  std::optional<CommodityIndex> commodity;
  Rational from;
  Rational to;
  Rational magnitude;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ViolationReport {
  std::vector<Violation> violations;

  bool feasible() const { return violations.empty(); }
  std::size_t count(ViolationKind kind) const;
  void append(const ViolationReport& other);

  /// One JSON object per line.
  std::string to_json_lines() const;
};

/// Integral of `rate` over [0, min(theta, T)). Throws on negative theta.
Rational cumulative(const StepFunction& rate, const Rational& theta);

/// Throws std::invalid_argument if the flow references unknown arcs or
/// commodities.
void check_structure(const FlowOverTime& flow, const Instance& instance);

ViolationReport check_capacity(const FlowOverTime& flow, const Instance& instance);
ViolationReport check_conservation(const FlowOverTime& flow, const Instance& instance,
                                   StorageMode mode);
ViolationReport check_demands(const FlowOverTime& flow, const Instance& instance);
ViolationReport check_flow(const FlowOverTime& flow, const Instance& instance, StorageMode mode);

}  // namespace qflow
