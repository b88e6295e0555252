#include "qflow/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace qflow {
namespace {

bool is_integer_literal(std::string_view text, bool allow_sign) {
  if (text.empty()) return false;
  std::size_t start = 0;
  if (allow_sign && (text[0] == '-' || text[0] == '+')) start = 1;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num, true) || !is_integer_literal(den, false)) {
    throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  }
  mpz_class p(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) {
    throw std::invalid_argument("zero denominator in rational literal '" + std::string(text) +
                                "'");
  }
  Rational value(p, q);
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) { return value.get_str(); }

Rational make_rational(long numerator, long denominator) {
  Rational value(numerator, denominator);
  value.canonicalize();
  return value;
}

}  // namespace qflow
