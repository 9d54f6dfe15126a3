#pragma once

// Random query ASTs for round-trip testing. Generates only shapes the grammar
// can express: S=? at the top or as a filter's inner formula, single-comparison
// probability bounds, C<=n with n >= 1.

#include <random>
#include <string>

#include "courtmc/query/ast.hpp"

namespace astgen {

using namespace courtmc;
using namespace courtmc::query;

class Generator {
 public:
  explicit Generator(std::uint32_t seed) : rng_(seed) {}

  StateFormula query() {
    switch (pick(5)) {
      case 0: return steady(state(3));
      case 1: return filter(filter_op(), inner(), state(2));
      default: return state(4);
    }
  }

  StateFormula state(int depth) {
    const int choices = depth <= 0 ? 3 : 9;
    switch (pick(choices)) {
      case 0: return tt();
      case 1: return prop(name());
      case 2: return index_eq(static_cast<long long>(pick(5000)));
      case 3: return neg(state(depth - 1));
      case 4: return conj(state(depth - 1), state(depth - 1));
      case 5: return disj(state(depth - 1), state(depth - 1));
      case 6: return prob(bound(), path(depth - 1));
      case 7: return reward(name(), reward_path(depth - 1));
      default: return filter(filter_op(), inner(), state(depth - 1));
    }
  }

 private:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  std::string name() {
    static const char* names[] = {"PP", "RR", "JJ", "FINAL", "INITIAL", "J3", "J31", "InterveningPPJJ",
                                  "(0,1,IU,0,1,0,0,1,0)", "n_step", "r_INTERVENING", "a b", "x", "X", "U"};
    return names[pick(std::size(names))];
  }

  FilterOp filter_op() { return static_cast<FilterOp>(pick(4)); }

  StateFormula inner() {
    switch (pick(4)) {
      case 0: return steady(state(2));
      case 1: return reward(name(), reward_path(2));
      case 2: return prob(ProbBound::query(), path(2));
      default: return state(2);
    }
  }

  ProbBound bound() {
    static const double ps[] = {0.0, 0.25, 0.5, 0.99, 1.0, 0.1, 1e-6, 0.333};
    const double p = ps[pick(std::size(ps))];
    switch (pick(5)) {
      case 0: return ProbBound::query();
      case 1: return ProbBound::at_least(p);
      case 2: return ProbBound::at_least(p, true);
      case 3: return ProbBound::at_most(p);
      default: return ProbBound::at_most(p, true);
    }
  }

  Operand operand(int depth) { return pick(3) == 0 ? at_next(state(depth)) : at_state(state(depth)); }

  PathFormula path(int depth) {
    switch (pick(4)) {
      case 0: return next(state(depth));
      case 1: return bounded_until(state(depth), state(depth), pick(20));
      case 2: return Until{at_state(tt()), at_state(state(depth))};
      default: return Until{operand(depth), operand(depth)};
    }
  }

  RewardPath reward_path(int depth) {
    switch (pick(3)) {
      case 0: return Cumulative{1 + pick(100)};
      case 1: return Reach{state(depth)};
      default: return RewardUntil{operand(depth), operand(depth)};
    }
  }

  std::mt19937 rng_;
};

}  // namespace astgen
