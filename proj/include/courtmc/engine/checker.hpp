#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "courtmc/core/error.hpp"
#include "courtmc/core/model.hpp"
#include "courtmc/core/result.hpp"
#include "courtmc/core/state_set.hpp"
#include "courtmc/engine/lifted.hpp"
#include "courtmc/engine/solver.hpp"
#include "courtmc/query/ast.hpp"
#include "courtmc/query/printer.hpp"

namespace courtmc::engine {

/// Aggregates `values` over Sat(clause).
///
/// `state` needs exactly one satisfying state; `avg` is the unweighted mean and
/// is +∞ as soon as one value is; `min`/`max` are the extrema.
inline double apply_filter(query::FilterOp op, std::span<const double> values, const StateSet& clause) {
  if (clause.empty()) throw Error(ErrorCode::FilterEmpty, "filter clause is satisfied by no state");
  const auto states = clause.indices();
  switch (op) {
    case query::FilterOp::State:
      if (states.size() != 1) {
        throw Error(ErrorCode::FilterStateNotUnique,
                    "filter(state, ...) clause is satisfied by " + std::to_string(states.size()) + " states");
      }
      return values[states.front()];
    case query::FilterOp::Avg: {
      double sum = 0.0;
      for (auto s : states) sum += values[s];
      return std::isinf(sum) ? sum : sum / static_cast<double>(states.size());
    }
    case query::FilterOp::Min: {
      double m = kInfinity;
      for (auto s : states) m = std::min(m, values[s]);
      return m;
    }
    case query::FilterOp::Max: {
      double m = -kInfinity;
      for (auto s : states) m = std::max(m, values[s]);
      return m;
    }
  }
  return 0.0;
}

/// Evaluates query formulas against one chain.
///
/// The chain is borrowed and must outlive the checker. Numeric operator results
/// are memoized by their canonical text, so sweeping a template over x=j reuses
/// every subformula that does not mention j. Not thread-safe; use one checker
/// per thread.
class Checker {
 public:
  explicit Checker(const LabeledChain& chain, SolverConfig cfg = {}) : chain_(chain), cfg_(cfg) { check_config(cfg_); }

  const LabeledChain& chain() const noexcept { return chain_; }
  const SolverConfig& config() const noexcept { return cfg_; }

  /// Unknown-proposition warnings collected so far, deduplicated.
  std::vector<std::string> warnings() const { return {warnings_.begin(), warnings_.end()}; }

  // ---- satisfaction sets ---------------------------------------------------

  StateSet sat(const query::StateFormula& f) {
    using namespace query;
    const std::size_t n = chain_.size();
    return std::visit(
        [&](const auto& node) -> StateSet {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, True>) {
            return StateSet(n, true);
          } else if constexpr (std::is_same_v<T, Prop>) {
            if (!chain_.labels().has(node.name)) {
              warnings_.insert("unknown proposition \"" + node.name + "\" denotes the empty set");
            }
            return chain_.labels().sat(node.name);
          } else if constexpr (std::is_same_v<T, StateIndexEq>) {
            return chain_.state_index_prop(node.index);
          } else if constexpr (std::is_same_v<T, Not>) {
            return ~sat(*node.operand);
          } else if constexpr (std::is_same_v<T, And>) {
            return sat(*node.lhs) & sat(*node.rhs);
          } else if constexpr (std::is_same_v<T, Or>) {
            return sat(*node.lhs) | sat(*node.rhs);
          } else if constexpr (std::is_same_v<T, ProbOp>) {
            if (node.bound.is_query()) {
              throw Error(ErrorCode::QueryOperatorInBooleanContext, "'P=?' used where a state formula is expected");
            }
            const auto values = probabilities(node.path);
            StateSet out(n);
            for (std::size_t s = 0; s < n; ++s) {
              if (node.bound.interval().contains(values[s])) out.insert(s);
            }
            return out;
          } else if constexpr (std::is_same_v<T, SteadyOp>) {
            throw Error(ErrorCode::QueryOperatorInBooleanContext, "'S=?' used where a state formula is expected");
          } else if constexpr (std::is_same_v<T, RewardOp>) {
            throw Error(ErrorCode::QueryOperatorInBooleanContext, "'R=?' used where a state formula is expected");
          } else {
            throw Error(ErrorCode::QueryOperatorInBooleanContext, "filter used where a state formula is expected");
          }
        },
        f.node);
  }

  // ---- probability operators ----------------------------------------------

  std::vector<double> prob_next(const query::StateFormula& f) {
    return next_probabilities(chain_.transitions(), sat(f));
  }

  std::vector<double> prob_bounded_until(const query::StateFormula& lhs, const query::StateFormula& rhs,
                                         std::size_t k) {
    return bounded_until_probabilities(chain_.transitions(), sat(lhs), sat(rhs), k);
  }

  std::vector<double> prob_until(const query::Operand& lhs, const query::Operand& rhs) {
    if (is_state(lhs) && is_state(rhs)) {
      return until_probabilities(chain_.transitions(), sat(*lhs.formula), sat(*rhs.formula), cfg_);
    }
    const auto& lifted = lifted_chain();
    const auto lifted_values =
        until_probabilities(lifted.matrix(), lift(lifted, lhs), lift(lifted, rhs), cfg_);
    auto out = lifted.project(lifted_values);
    for (auto& p : out) p = clamp_probability(p);
    return out;
  }

  std::vector<double> probabilities(const query::PathFormula& path) {
    using namespace query;
    return cached(pretty_print(path), [&] {
      if (const auto* n = std::get_if<Next>(&path)) return prob_next(*n->operand);
      if (const auto* u = std::get_if<Until>(&path)) return prob_until(u->lhs, u->rhs);
      const auto& b = std::get<BoundedUntil>(path);
      return prob_bounded_until(*b.lhs, *b.rhs, b.bound);
    });
  }

  std::vector<double> steady_state(const query::StateFormula& f) {
    return steady_state_probabilities(chain_.transitions(), sat(f), cfg_);
  }

  // ---- reward operators ----------------------------------------------------

  const RewardStructure& reward_structure(const std::string& name) const {
    const auto* r = chain_.find_reward(name);
    if (!r) throw Error(ErrorCode::UnknownReward, "no reward structure named \"" + name + "\"");
    return *r;
  }

  std::vector<double> reward_cumulative(const std::string& reward, std::size_t steps) {
    return cumulative_rewards(chain_.transitions(), reward_structure(reward).values(), steps);
  }

  std::vector<double> reward_reach(const std::string& reward, const query::StateFormula& target) {
    const auto& r = reward_structure(reward);
    return until_rewards(chain_.transitions(), r.values(), StateSet(chain_.size(), true), sat(target), cfg_);
  }

  /// Expected reward until the rhs operand holds, with `(X Φ)` operands handled on
  /// the edge-lifted chain: edge (u,v) earns r(u) and the edge where rhs first
  /// holds earns nothing. +∞ wherever the until holds with probability < 1.
  std::vector<double> reward_until(const std::string& reward, const query::Operand& lhs, const query::Operand& rhs) {
    const auto& r = reward_structure(reward);
    if (is_state(lhs) && is_state(rhs)) {
      return until_rewards(chain_.transitions(), r.values(), sat(*lhs.formula), sat(*rhs.formula), cfg_);
    }
    const auto& lifted = lifted_chain();
    const auto lifted_rewards = lifted.source_rewards(r.values());
    const auto lifted_values =
        until_rewards(lifted.matrix(), lifted_rewards, lift(lifted, lhs), lift(lifted, rhs), cfg_);
    return lifted.project(lifted_values);
  }

  std::vector<double> rewards(const query::RewardOp& op) {
    using namespace query;
    return cached(pretty_print(StateFormula{op}), [&] {
      if (const auto* c = std::get_if<Cumulative>(&op.path)) return reward_cumulative(op.reward, c->steps);
      if (const auto* t = std::get_if<Reach>(&op.path)) return reward_reach(op.reward, *t->target);
      const auto& u = std::get<RewardUntil>(op.path);
      return reward_until(op.reward, u.lhs, u.rhs);
    });
  }

  // ---- whole queries -------------------------------------------------------

  /// Per-state values of a `=?` operator, or a 0/1 indicator for a boolean formula.
  std::vector<double> values(const query::StateFormula& f) {
    using namespace query;
    if (const auto* p = std::get_if<ProbOp>(&f.node); p && p->bound.is_query()) return probabilities(p->path);
    if (const auto* s = std::get_if<SteadyOp>(&f.node)) {
      return cached(pretty_print(f), [&] { return steady_state(*s->operand); });
    }
    if (const auto* r = std::get_if<RewardOp>(&f.node)) return rewards(*r);
    if (f.is<Filter>()) throw Error(ErrorCode::QueryOperatorInBooleanContext, "nested filter");
    const auto set = sat(f);
    std::vector<double> out(chain_.size(), 0.0);
    set.for_each([&](std::size_t s) { out[s] = 1.0; });
    return out;
  }

  QueryResult evaluate(const query::StateFormula& f) {
    using namespace query;
    if (const auto* flt = std::get_if<Filter>(&f.node)) {
      const auto inner = values(*flt->inner);
      return ScalarResult{apply_filter(flt->op, inner, sat(*flt->clause))};
    }
    const bool numeric = (f.is<ProbOp>() && f.as<ProbOp>().bound.is_query()) || f.is<SteadyOp>() || f.is<RewardOp>();
    if (numeric) {
      auto v = values(f);
      const double at_initial = v[chain_.initial_index()];
      return VectorResult{at_initial, std::move(v)};
    }
    auto set = sat(f);
    const bool at_initial = set.contains(chain_.initial_index());
    return BooleanResult{at_initial, std::move(set)};
  }

 private:
  static bool is_state(const query::Operand& o) { return o.kind == query::Operand::Kind::State; }

  StateSet lift(const LiftedChain& lifted, const query::Operand& o) {
    const auto base = sat(*o.formula);
    return is_state(o) ? lifted.at_source(base) : lifted.at_target(base);
  }

  const LiftedChain& lifted_chain() {
    if (!lifted_) lifted_.emplace(chain_.transitions());
    return *lifted_;
  }

  template <typename F>
  std::vector<double> cached(const std::string& key, F&& compute) {
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    auto v = compute();
    cache_.emplace(key, v);
    return v;
  }

  const LabeledChain& chain_;
  SolverConfig cfg_;
  std::set<std::string> warnings_;
  std::optional<LiftedChain> lifted_;
  std::map<std::string, std::vector<double>> cache_;
};

inline QueryResult evaluate(const LabeledChain& chain, const query::StateFormula& f, SolverConfig cfg = {}) {
  return Checker(chain, cfg).evaluate(f);
}

inline QueryResult evaluate(const MarkovModel& model, const query::StateFormula& f, SolverConfig cfg = {}) {
  return evaluate(model.chain(), f, cfg);
}

}  // namespace courtmc::engine
