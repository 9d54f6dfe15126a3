#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "courtmc/core/state_set.hpp"

namespace courtmc {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// `=?` or a probability interval J ⊆ [0,1] with per-end open/closed flags.
struct ProbBound {
  struct Query {
    friend bool operator==(const Query&, const Query&) = default;
  };
  struct Interval {
    double lo = 0.0;
    double hi = 1.0;
    bool lo_open = false;
    bool hi_open = false;

    bool contains(double v) const {
      const bool above = lo_open ? v > lo : v >= lo;
      const bool below = hi_open ? v < hi : v <= hi;
      return above && below;
    }
    friend bool operator==(const Interval&, const Interval&) = default;
  };

  std::variant<Query, Interval> value = Query{};

  bool is_query() const noexcept { return std::holds_alternative<Query>(value); }
  const Interval& interval() const { return std::get<Interval>(value); }

  static ProbBound query() { return {}; }
  static ProbBound at_least(double p, bool strict = false) { return {Interval{p, 1.0, strict, false}}; }
  static ProbBound at_most(double p, bool strict = false) { return {Interval{0.0, p, false, strict}}; }

  friend bool operator==(const ProbBound&, const ProbBound&) = default;
};

/// Outcome of evaluating a query.
///
/// Scalar: filters. Vector: top-level `=?` operators, with the value at the
/// initial state and the full per-state vector. Boolean: plain state formulas.
/// Values are extended reals; +∞ is a legal reward outcome.
struct ScalarResult {
  double value;
};

struct VectorResult {
  double at_initial;
  std::vector<double> values;
};

struct BooleanResult {
  bool at_initial;
  StateSet states;
};

using QueryResult = std::variant<ScalarResult, VectorResult, BooleanResult>;

/// The headline number of a result: the scalar, the initial value, or 1/0 for booleans.
inline double headline(const QueryResult& r) {
  if (const auto* s = std::get_if<ScalarResult>(&r)) return s->value;
  if (const auto* v = std::get_if<VectorResult>(&r)) return v->at_initial;
  return std::get<BooleanResult>(r).at_initial ? 1.0 : 0.0;
}

}  // namespace courtmc
