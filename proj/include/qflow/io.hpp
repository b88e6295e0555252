#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "qflow/core.hpp"

namespace qflow {

/// Malformed instance or flow text. `where()` is a byte offset for syntax
/// errors and a JSON path (e.g. "arcs[2].capacity") for field errors.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, const std::string& message)
      : std::runtime_error(where + ": " + message), where_(std::move(where)) {}

  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& instance);

FlowOverTime parse_flow(std::string_view text);
std::string serialize_flow(const FlowOverTime& flow);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace qflow
