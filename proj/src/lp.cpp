#include "qflow/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace qflow {
namespace {

template <class Scalar>
struct Arith;

template <>
struct Arith<Rational> {
  static int sign(const Rational& v) { return sgn(v); }
  static Rational from(const Rational& v) { return v; }
  static Rational to_rational(const Rational& v) { return v; }
};

template <>
struct Arith<double> {
  static constexpr double kTolerance = 1e-9;
  static int sign(double v) { return v > kTolerance ? 1 : (v < -kTolerance ? -1 : 0); }
  static double from(const Rational& v) { return v.get_d(); }
  static Rational to_rational(double v) { return Rational(std::abs(v) <= kTolerance ? 0.0 : v); }
};

// Phase-1 tableau with sparse rows. Columns are the structural variables
// followed by one slack per inequality row. Artificial variables are never
// stored as columns: they start basic, and once they leave they are never
// allowed back, so only their identity in the basis matters.
template <class Scalar>
class Phase1 {
 public:
  using A = Arith<Scalar>;
  using Entry = std::pair<std::size_t, Scalar>;
  using Row = std::vector<Entry>;

  explicit Phase1(const LinearProgram& lp) : structural_(lp.variable_count) {
    std::size_t slack_count = 0;
    for (const auto& c : lp.constraints) {
      if (c.relation == Relation::LessEqual) ++slack_count;
    }
    width_ = structural_ + slack_count;
    reduced_.assign(width_, Scalar(0));
    objective_ = Scalar(0);

    std::size_t next_slack = structural_;
    for (const auto& c : lp.constraints) {
      const std::size_t row_index = rows_.size();
      Row row;
      row.reserve(c.terms.size() + 1);
      for (const auto& [j, coefficient] : c.terms) {
        if (A::sign(A::from(coefficient)) != 0) row.emplace_back(j, A::from(coefficient));
      }
      std::sort(row.begin(), row.end(),
                [](const Entry& a, const Entry& b) { return a.first < b.first; });
      merge_duplicates(row);
      Scalar rhs = A::from(c.rhs);
      std::optional<std::size_t> slack;
      if (c.relation == Relation::LessEqual) {
        slack = next_slack++;
        row.emplace_back(*slack, Scalar(1));
      }
      const bool negate = A::sign(rhs) < 0;
      if (negate) {
        for (auto& entry : row) entry.second = -entry.second;
        rhs = -rhs;
      }
      if (slack && !negate) {
        basis_.push_back(*slack);
      } else {
        basis_.push_back(artificial(row_index));
        for (const auto& [j, value] : row) reduced_[j] -= value;
        objective_ += rhs;
      }
      rows_.push_back(std::move(row));
      rhs_.push_back(std::move(rhs));
    }
  }

  LpResult solve() {
    LpResult result;
    while (true) {
      const std::optional<std::size_t> entering = choose_entering();
      if (!entering) break;
      const std::optional<std::size_t> leaving = choose_leaving(*entering);
      // Phase 1 is bounded below by zero, so some row always blocks.
      if (!leaving) throw std::logic_error("phase-1 simplex reported an unbounded ray");
      pivot(*leaving, *entering);
      ++result.pivots;
    }
    if (A::sign(objective_) > 0) return result;

    result.feasible = true;
    result.assignment.assign(structural_, Rational(0));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (basis_[r] < structural_) result.assignment[basis_[r]] = A::to_rational(rhs_[r]);
    }
    return result;
  }

 private:
  std::size_t artificial(std::size_t row) const { return width_ + row; }

  static void merge_duplicates(Row& row) {
    Row merged;
    for (auto& entry : row) {
      if (!merged.empty() && merged.back().first == entry.first) {
        merged.back().second += entry.second;
      } else {
        merged.push_back(std::move(entry));
      }
    }
    std::erase_if(merged, [](const Entry& e) { return A::sign(e.second) == 0; });
    row = std::move(merged);
  }

  static const Scalar* find(const Row& row, std::size_t column) {
    const auto it = std::lower_bound(row.begin(), row.end(), column,
                                     [](const Entry& e, std::size_t c) { return e.first < c; });
    return it != row.end() && it->first == column ? &it->second : nullptr;
  }

  // Bland: lowest-index column with negative reduced cost.
  std::optional<std::size_t> choose_entering() const {
    for (std::size_t j = 0; j < width_; ++j) {
      if (A::sign(reduced_[j]) < 0) return j;
    }
    return std::nullopt;
  }

  // Minimum ratio; ties go to the lowest-index basic variable.
  std::optional<std::size_t> choose_leaving(std::size_t column) const {
    std::optional<std::size_t> best;
    Scalar best_ratio{};
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Scalar* a = find(rows_[r], column);
      if (!a || A::sign(*a) <= 0) continue;
      Scalar ratio = rhs_[r] / *a;
      if (!best) {
        best = r;
        best_ratio = std::move(ratio);
        continue;
      }
      const int cmp = A::sign(Scalar(ratio - best_ratio));
      if (cmp < 0 || (cmp == 0 && basis_[r] < basis_[*best])) {
        best = r;
        best_ratio = std::move(ratio);
      }
    }
    return best;
  }

  // target -= factor * source, both sorted by column.
  static void axpy(Row& target, const Scalar& factor, const Row& source) {
    Row out;
    out.reserve(target.size() + source.size());
    auto t = target.begin();
    auto s = source.begin();
    while (t != target.end() || s != source.end()) {
      if (s == source.end() || (t != target.end() && t->first < s->first)) {
        out.push_back(std::move(*t++));
      } else if (t == target.end() || s->first < t->first) {
        out.emplace_back(s->first, Scalar(-factor * s->second));
        ++s;
      } else {
        Scalar value = t->second - factor * s->second;
        if (A::sign(value) != 0) out.emplace_back(t->first, std::move(value));
        ++t;
        ++s;
      }
    }
    target = std::move(out);
  }

  void pivot(std::size_t leaving_row, std::size_t column) {
    Row& pivot_row = rows_[leaving_row];
    const Scalar pivot_value = *find(pivot_row, column);
    for (auto& entry : pivot_row) entry.second /= pivot_value;
    rhs_[leaving_row] /= pivot_value;

    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (r == leaving_row) continue;
      const Scalar* a = find(rows_[r], column);
      if (!a) continue;
      const Scalar factor = *a;
      axpy(rows_[r], factor, pivot_row);
      rhs_[r] -= factor * rhs_[leaving_row];
      if constexpr (std::is_same_v<Scalar, double>) {
        if (A::sign(rhs_[r]) == 0) rhs_[r] = 0.0;
      }
    }

    const Scalar factor = reduced_[column];
    for (const auto& [j, value] : pivot_row) reduced_[j] -= factor * value;
    objective_ += factor * rhs_[leaving_row];
    basis_[leaving_row] = column;
  }

  std::size_t structural_;
  std::size_t width_{};
  std::vector<Row> rows_;
  std::vector<Scalar> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<Scalar> reduced_;
  Scalar objective_;
};

}  // namespace

void LinearProgram::validate() const {
  for (const auto& c : constraints) {
    for (const auto& term : c.terms) {
      if (term.first >= variable_count) {
        throw std::invalid_argument("constraint references variable " +
                                    std::to_string(term.first) + " of " +
                                    std::to_string(variable_count));
      }
    }
  }
}

LpResult lp_feasible(const LinearProgram& lp, const LpOptions& options) {
  lp.validate();
  if (options.arithmetic == Arithmetic::Exact) return Phase1<Rational>(lp).solve();

  LpResult result = Phase1<double>(lp).solve();
  if (result.feasible && max_residual(lp, result.assignment) > Arith<double>::kTolerance) {
    result.feasible = false;
    result.assignment.clear();
  }
  return result;
}

bool satisfies(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (x.size() != lp.variable_count) return false;
  for (const auto& value : x) {
    if (value < 0) return false;
  }
  for (const auto& c : lp.constraints) {
    Rational lhs = 0;
    for (const auto& [j, coefficient] : c.terms) lhs += coefficient * x[j];
    if (c.relation == Relation::Equal ? lhs != c.rhs : lhs > c.rhs) return false;
  }
  return true;
}

double max_residual(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (x.size() != lp.variable_count) return std::numeric_limits<double>::infinity();
  double worst = 0;
  for (const auto& value : x) worst = std::max(worst, -value.get_d());
  for (const auto& c : lp.constraints) {
    Rational lhs = 0;
    for (const auto& [j, coefficient] : c.terms) lhs += coefficient * x[j];
    const double gap = Rational(lhs - c.rhs).get_d();
    worst = std::max(worst, c.relation == Relation::Equal ? std::abs(gap) : gap);
  }
  return worst;
}

}  // namespace qflow
