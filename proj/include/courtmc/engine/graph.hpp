#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "courtmc/core/model.hpp"
#include "courtmc/core/state_set.hpp"

namespace courtmc::engine {

/// States reaching `target` along paths whose earlier states all lie in `through`.
inline StateSet backward_reach(const SparseMatrix& m, const StateSet& through, const StateSet& target) {
  const auto pre = m.predecessors();
  StateSet reached = target;
  std::vector<std::size_t> stack = target.indices();
  while (!stack.empty()) {
    const auto s = stack.back();
    stack.pop_back();
    for (auto p : pre[s]) {
      if (!reached.contains(p) && through.contains(p)) {
        reached.insert(p);
        stack.push_back(p);
      }
    }
  }
  return reached;
}

/// States where Φ1 U Φ2 holds with probability 0.
inline StateSet prob0(const SparseMatrix& m, const StateSet& sat1, const StateSet& sat2) {
  return ~backward_reach(m, sat1, sat2);
}

/// States where Φ1 U Φ2 holds with probability 1: those that cannot reach a
/// probability-0 state while staying inside Sat(Φ1) \ Sat(Φ2).
inline StateSet prob1(const SparseMatrix& m, const StateSet& sat1, const StateSet& sat2) {
  const auto zero = prob0(m, sat1, sat2);
  return ~backward_reach(m, sat1 - sat2, zero);
}

/// Strongly connected components (iterative Tarjan). Returns component id per state
/// and the number of components.
inline std::pair<std::vector<std::size_t>, std::size_t> strongly_connected_components(const SparseMatrix& m) {
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  const std::size_t n = m.rows();
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t next_index = 0, components = 0;

  struct Frame {
    std::size_t state;
    std::size_t edge;
  };
  std::vector<Frame> call;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& frame = call.back();
      const auto row = m.row(frame.state);
      if (frame.edge < row.size()) {
        const auto w = row[frame.edge++].col;
        if (index[w] == kUnvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[frame.state] = std::min(low[frame.state], index[w]);
        }
        continue;
      }
      const auto v = frame.state;
      call.pop_back();
      if (!call.empty()) low[call.back().state] = std::min(low[call.back().state], low[v]);
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = components;
        } while (w != v);
        ++components;
      }
    }
  }
  return {std::move(comp), components};
}

/// Bottom SCCs: components with no transition leaving them.
inline std::vector<std::vector<std::size_t>> bottom_sccs(const SparseMatrix& m) {
  const auto [comp, count] = strongly_connected_components(m);
  std::vector<bool> bottom(count, true);
  std::vector<std::vector<std::size_t>> members(count);
  for (std::size_t s = 0; s < m.rows(); ++s) {
    members[comp[s]].push_back(s);
    for (const auto& e : m.row(s)) {
      if (comp[e.col] != comp[s]) bottom[comp[s]] = false;
    }
  }
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t c = 0; c < count; ++c) {
    if (bottom[c]) out.push_back(std::move(members[c]));
  }
  return out;
}

}  // namespace courtmc::engine
