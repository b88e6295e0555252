#include "qflow/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qflow {
namespace {

using json = nlohmann::json;

const json& require(const json& object, const char* key, const std::string& path) {
  if (!object.is_object()) throw ParseError(path, "expected an object");
  const auto it = object.find(key);
  if (it == object.end()) throw ParseError(path, std::string("missing field '") + key + "'");
  return *it;
}

std::string require_string(const json& value, const std::string& path) {
  if (!value.is_string()) throw ParseError(path, "expected a string");
  return value.get<std::string>();
}

Rational rational_field(const json& value, const std::string& path) {
  if (value.is_number_integer()) {
    return Rational(mpz_class(value.dump(), 10));
  }
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(path, e.what());
    }
  }
  throw ParseError(path, "expected an integer or a \"p/q\" string");
}

std::int64_t transit_field(const json& value, const std::string& path) {
  if (value.is_number_integer()) {
    const auto transit = value.get<std::int64_t>();
    if (transit < 0) throw ParseError(path, "transit must be nonnegative");
    return transit;
  }
  if (value.is_string()) {
    const Rational transit = rational_field(value, path);
    if (transit.get_den() != 1) throw ParseError(path, "transit must be an integer");
    if (transit < 0) throw ParseError(path, "transit must be nonnegative");
    if (!transit.get_num().fits_slong_p()) throw ParseError(path, "transit out of range");
    return transit.get_num().get_si();
  }
  if (value.is_number()) throw ParseError(path, "transit must be an integer");
  throw ParseError(path, "expected an integer transit");
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), e.what());
  }
}

const json& require_array(const json& root, const char* key) {
  const json& value = require(root, key, "$");
  if (!value.is_array()) throw ParseError(key, "expected an array");
  return value;
}

}  // namespace

Instance parse_instance(std::string_view text) {
  const json root = parse_json(text);
  Instance instance;

  for (std::size_t i = 0; const auto& node : require_array(root, "nodes")) {
    instance.network.nodes.push_back(require_string(node, "nodes[" + std::to_string(i++) + "]"));
  }
  for (std::size_t i = 0; const auto& entry : require_array(root, "arcs")) {
    const std::string path = "arcs[" + std::to_string(i++) + "]";
    Arc arc;
    arc.id = require_string(require(entry, "id", path), path + ".id");
    arc.tail = require_string(require(entry, "tail", path), path + ".tail");
    arc.head = require_string(require(entry, "head", path), path + ".head");
    arc.capacity = rational_field(require(entry, "capacity", path), path + ".capacity");
    if (arc.capacity < 0) throw ParseError(path + ".capacity", "capacity must be nonnegative");
    arc.transit = transit_field(require(entry, "transit", path), path + ".transit");
    instance.network.arcs.push_back(std::move(arc));
  }
  for (std::size_t i = 0; const auto& entry : require_array(root, "commodities")) {
    const std::string path = "commodities[" + std::to_string(i++) + "]";
    Commodity commodity;
    commodity.source = require_string(require(entry, "source", path), path + ".source");
    commodity.sink = require_string(require(entry, "sink", path), path + ".sink");
    commodity.demand = rational_field(require(entry, "demand", path), path + ".demand");
    if (commodity.demand < 0) throw ParseError(path + ".demand", "demand must be nonnegative");
    instance.commodities.push_back(std::move(commodity));
  }
  return instance;
}

std::string serialize_instance(const Instance& instance) {
  json root;
  root["nodes"] = instance.network.nodes;
  root["arcs"] = json::array();
  for (const auto& arc : instance.network.arcs) {
    root["arcs"].push_back({{"id", arc.id},
                            {"tail", arc.tail},
                            {"head", arc.head},
                            {"capacity", to_string(arc.capacity)},
                            {"transit", arc.transit}});
  }
  root["commodities"] = json::array();
  for (const auto& commodity : instance.commodities) {
    root["commodities"].push_back({{"source", commodity.source},
                                   {"sink", commodity.sink},
                                   {"demand", to_string(commodity.demand)}});
  }
  return root.dump(2) + "\n";
}

FlowOverTime parse_flow(std::string_view text) {
  const json root = parse_json(text);
  const Rational horizon = rational_field(require(root, "horizon", "$"), "horizon");
  if (horizon <= 0) throw ParseError("horizon", "horizon must be positive");
  FlowOverTime flow(horizon);

  for (std::size_t i = 0; const auto& entry : require_array(root, "rates")) {
    const std::string path = "rates[" + std::to_string(i++) + "]";
    const std::string arc = require_string(require(entry, "arc", path), path + ".arc");
    const json& commodity = require(entry, "commodity", path);
    if (!commodity.is_number_unsigned()) {
      throw ParseError(path + ".commodity", "expected a nonnegative integer");
    }
    const json& pieces_json = require(entry, "pieces", path);
    if (!pieces_json.is_array()) throw ParseError(path + ".pieces", "expected an array");
    std::vector<Piece> pieces;
    for (std::size_t j = 0; const auto& piece : pieces_json) {
      const std::string piece_path = path + ".pieces[" + std::to_string(j++) + "]";
      pieces.push_back(Piece{rational_field(require(piece, "from", piece_path), piece_path + ".from"),
                             rational_field(require(piece, "to", piece_path), piece_path + ".to"),
                             rational_field(require(piece, "rate", piece_path), piece_path + ".rate")});
    }
    const auto index = commodity.get<CommodityIndex>();
    if (flow.rate(arc, index)) throw ParseError(path, "duplicate (arc, commodity) entry");
    try {
      flow.set_rate(arc, index, StepFunction(horizon, std::move(pieces)));
    } catch (const std::invalid_argument& e) {
      throw ParseError(path + ".pieces", e.what());
    }
  }
  return flow;
}

std::string serialize_flow(const FlowOverTime& flow) {
  json root;
  root["horizon"] = to_string(flow.horizon());
  root["rates"] = json::array();
  for (const auto& [key, function] : flow.rates()) {
    json pieces = json::array();
    for (const auto& piece : function.pieces()) {
      pieces.push_back({{"from", to_string(piece.from)},
                        {"to", to_string(piece.to)},
                        {"rate", to_string(piece.rate)}});
    }
    root["rates"].push_back({{"arc", key.arc}, {"commodity", key.commodity}, {"pieces", pieces}});
  }
  return root.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream contents;
  contents << in.rdbuf();
  return contents.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace qflow
