#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qflow/rational.hpp"

namespace qflow {

using NodeId = std::string;
using ArcId = std::string;
using CommodityIndex = std::size_t;

struct Arc {
  ArcId id;
  NodeId tail;
  NodeId head;
  Rational capacity;       // maximum inflow rate
  std::int64_t transit{};  // integral time units

  friend bool operator==(const Arc&, const Arc&) = default;
};

struct Network {
  std::vector<NodeId> nodes;
  std::vector<Arc> arcs;

  std::optional<std::size_t> node_index(std::string_view id) const;
  std::optional<std::size_t> arc_index(std::string_view id) const;

  friend bool operator==(const Network&, const Network&) = default;
};

struct Commodity {
  NodeId source;
  NodeId sink;
  Rational demand;

  friend bool operator==(const Commodity&, const Commodity&) = default;
};

struct Instance {
  Network network;
  std::vector<Commodity> commodities;

  Rational total_demand() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

enum class StorageMode { WithStorage, NoIntermediateStorage };

std::string_view to_string(StorageMode mode);
std::optional<StorageMode> parse_storage_mode(std::string_view text);

/// Half-open interval [from, to) carrying a constant flow rate.
struct Piece {
  Rational from;
  Rational to;
  Rational rate;

  friend bool operator==(const Piece&, const Piece&) = default;
};

/// Piecewise-constant, nonnegative function on [0, horizon). Gaps between
/// pieces are rate zero. Pieces are sorted, disjoint and non-empty.
class StepFunction {
 public:
  /// Throws std::invalid_argument if the pieces break an invariant.
  StepFunction(Rational horizon, std::vector<Piece> pieces);

  const Rational& horizon() const { return horizon_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  /// Rate at time t (zero outside every piece and outside [0, horizon)).
  Rational rate_at(const Rational& t) const;

  /// Same pieces clipped to [0, new_horizon).
  StepFunction with_horizon(const Rational& new_horizon) const;

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  Rational horizon_;
  std::vector<Piece> pieces_;
};

struct RateKey {
  ArcId arc;
  CommodityIndex commodity{};

  friend auto operator<=>(const RateKey&, const RateKey&) = default;
};

/// Multi-commodity flow over time. Missing (arc, commodity) entries are the
/// zero function.
class FlowOverTime {
 public:
  explicit FlowOverTime(Rational horizon);

  const Rational& horizon() const { return horizon_; }
  const std::map<RateKey, StepFunction>& rates() const { return rates_; }

  /// Inserts or replaces a rate function; its horizon must match.
  void set_rate(const ArcId& arc, CommodityIndex commodity, StepFunction rate);
  /// Appends a piece to the rate function of (arc, commodity), creating it if
  /// needed. The piece must start at or after the last existing piece.
  void add_piece(const ArcId& arc, CommodityIndex commodity, Piece piece);

  /// nullptr when the entry is absent (identically zero).
  const StepFunction* rate(const ArcId& arc, CommodityIndex commodity) const;

  /// Copy with every function clipped (or zero-extended) to the new horizon.
  FlowOverTime with_horizon(const Rational& new_horizon) const;

  friend bool operator==(const FlowOverTime&, const FlowOverTime&) = default;

 private:
  Rational horizon_;
  std::map<RateKey, StepFunction> rates_;
};

struct ValidationReport {
  std::vector<std::string> defects;

  bool ok() const { return defects.empty(); }
};

ValidationReport validate_instance(const Instance& instance);

/// Transit time of a transit-shortest directed path, nullopt if t is
/// unreachable from s. Throws std::invalid_argument for unknown nodes.
std::optional<std::int64_t> shortest_transit(const Network& network, std::string_view s,
                                             std::string_view t);

/// Transit distances from `source` to every node (index order), nullopt where
/// unreachable. `reverse` computes distances to `source` instead.
std::vector<std::optional<std::int64_t>> transit_distances(const Network& network,
                                                           std::size_t source,
                                                           bool reverse = false);

}  // namespace qflow
