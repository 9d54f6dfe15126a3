#pragma once

#include <set>
#include <string>
#include <vector>

#include "courtmc/core/labels.hpp"
#include "courtmc/core/model.hpp"

namespace fixtures {

using courtmc::LabeledChain;
using courtmc::RewardStructure;
using courtmc::Transition;

inline LabeledChain make_chain(std::size_t n, std::vector<Transition> t, std::vector<std::set<std::string>> labels,
                               std::vector<RewardStructure> rewards = {}) {
  return LabeledChain(courtmc::SparseMatrix(n, std::move(t)), 0,
                      courtmc::PropositionRegistry(std::span<const std::set<std::string>>(labels)), std::move(rewards));
}

/// 0:a -> 1:b (1.0); 1 -> 1 (0.5), 1 -> 2:goal (0.5); 2 absorbing.
inline LabeledChain chain_a() {
  return make_chain(3, {{0, 1, 1.0}, {1, 1, 0.5}, {1, 2, 0.5}, {2, 2, 1.0}}, {{"a"}, {"b"}, {"goal"}},
                    {RewardStructure("n_step", {1, 1, 1}), RewardStructure("at_b", {0, 1, 0})});
}

/// 0:start -> 1:goal | 2:trap with 0.5 each; goal and trap absorbing.
inline LabeledChain trap_chain() {
  return make_chain(3, {{0, 1, 0.5}, {0, 2, 0.5}, {1, 1, 1.0}, {2, 2, 1.0}}, {{"start"}, {"goal"}, {"trap"}},
                    {RewardStructure("n_step", {1, 1, 1})});
}

/// P(0,1) = 0.3, P(1,0) = 0.6; stationary distribution (2/3, 1/3).
inline LabeledChain ergodic_chain() {
  return make_chain(2, {{0, 0, 0.7}, {0, 1, 0.3}, {1, 0, 0.6}, {1, 1, 0.4}}, {{"zero"}, {"one"}});
}

/// s0:A -> s1:A -> s2 (¬A), s2 self-loop; unit rewards.
inline LabeledChain line_chain() {
  return make_chain(3, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 2, 1.0}}, {{"A"}, {"A"}, {}},
                    {RewardStructure("unit", {1, 1, 1})});
}

/// advocate -> justice -> justice -> advocate (absorbing), n_step rewards.
inline LabeledChain discussion_chain() {
  return make_chain(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 3, 1.0}}, {{"PP"}, {"JJ"}, {"JJ"}, {"RR"}},
                    {RewardStructure("n_step", {1, 1, 1, 1})});
}

}  // namespace fixtures
