#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "courtmc/core/error.hpp"
#include "courtmc/core/model.hpp"
#include "courtmc/core/state.hpp"
#include "courtmc/engine/checker.hpp"
#include "courtmc/query/parser.hpp"
#include "courtmc/query/template.hpp"

namespace courtmc::engine {

enum class SortOrder { Descending, Ascending };

struct ExperimentSpec {
  std::string template_text;
  std::string var = "J";
  long long lo = 0;
  long long hi = 0;  // inclusive
  SortOrder order = SortOrder::Descending;
  std::optional<std::size_t> top_k;
};

struct ExperimentRow {
  std::size_t index;
  StateTuple state;
  double value;
};

struct ExperimentError {
  std::size_t index;
  ErrorCode code;
  std::string message;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;  // ranked, truncated to top_k
  std::vector<ExperimentError> errors;
  std::size_t evaluated = 0;
};

/// Sweeps `@var` over [lo, hi], evaluating the expanded query at each value.
///
/// Each expansion must yield a scalar (a filter) or a `=?` vector, whose value at
/// the initial state is used. +∞ ranks above every finite value in descending
/// order; ties break by ascending index. Per-value errors are collected rather
/// than aborting the sweep.
inline ExperimentResult run_experiment(const MarkovModel& model, const ExperimentSpec& spec, SolverConfig cfg = {}) {
  if (spec.lo < 0 || spec.hi < spec.lo || static_cast<std::size_t>(spec.hi) >= model.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "range " + std::to_string(spec.lo) + ".." + std::to_string(spec.hi) +
                                                " is outside 0.." + std::to_string(model.size() - 1));
  }
  // Fails fast on a template that is missing the placeholder or cannot parse.
  query::parse_query(query::expand_template(spec.template_text, spec.var, spec.lo));

  Checker checker(model.chain(), cfg);
  ExperimentResult out;
  for (long long j = spec.lo; j <= spec.hi; ++j) {
    const auto idx = static_cast<std::size_t>(j);
    ++out.evaluated;
    try {
      const auto f = query::parse_query(query::expand_template(spec.template_text, spec.var, j));
      const auto result = checker.evaluate(f);
      if (std::holds_alternative<BooleanResult>(result)) {
        throw Error(ErrorCode::QueryOperatorInBooleanContext, "experiment query must be numeric");
      }
      out.rows.push_back({idx, model.states()[idx], headline(result)});
    } catch (const Error& e) {
      out.errors.push_back({idx, e.code(), e.what()});
    }
  }

  const bool desc = spec.order == SortOrder::Descending;
  std::stable_sort(out.rows.begin(), out.rows.end(), [desc](const ExperimentRow& a, const ExperimentRow& b) {
    if (a.value != b.value) return desc ? a.value > b.value : a.value < b.value;
    return a.index < b.index;
  });
  if (spec.top_k && out.rows.size() > *spec.top_k) out.rows.erase(out.rows.begin() + static_cast<std::ptrdiff_t>(*spec.top_k), out.rows.end());
  return out;
}

}  // namespace courtmc::engine
