#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qflow/rational.hpp"

namespace qflow {

enum class Relation { LessEqual, Equal };

/// Sparse row: sum of coefficient * x[variable] (relation) rhs.
struct Constraint {
  std::vector<std::pair<std::size_t, Rational>> terms;
  Relation relation{Relation::Equal};
  Rational rhs;
};

/// Feasibility problem over nonnegative variables x[0..variable_count).
struct LinearProgram {
  std::size_t variable_count{};
  std::vector<Constraint> constraints;

  /// Throws std::invalid_argument on out-of-range variable indices.
  void validate() const;
};

enum class Arithmetic {
  Exact,    // rational simplex, exact verdicts
  Floating  // double simplex, residual tolerance 1e-9
};

struct LpOptions {
  Arithmetic arithmetic{Arithmetic::Exact};
};

struct LpResult {
  bool feasible{};
  /// Values of all variables when feasible; empty otherwise. In floating mode
  /// these are the exact binary values of the computed doubles.
  std::vector<Rational> assignment;
  std::size_t pivots{};
};

/// Phase-1 simplex with Bland's rule. Deterministic for a given input.
LpResult lp_feasible(const LinearProgram& lp, const LpOptions& options = {});

/// True when `x` is nonnegative and satisfies every constraint exactly.
bool satisfies(const LinearProgram& lp, const std::vector<Rational>& x);

/// Largest constraint or sign violation of `x` (zero when satisfied).
double max_residual(const LinearProgram& lp, const std::vector<Rational>& x);

}  // namespace qflow
