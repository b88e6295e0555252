#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qflow {

/// Exact rational number. Always kept in canonical form (reduced, positive
/// denominator).
using Rational = mpq_class;

/// Parses "p" or "p/q" with q > 0. Throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

/// Renders as "p" for integers and "p/q" otherwise.
std::string to_string(const Rational& value);

Rational make_rational(long numerator, long denominator = 1);

}  // namespace qflow
