#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "courtmc/core/model.hpp"
#include "courtmc/core/state_set.hpp"

namespace courtmc::engine {

/// Edge-lifted chain: one lifted state per transition (u,v) of the base chain,
/// with (u,v) -> (v,w) taken with probability P(v,w). A lifted path at position i
/// carries the base pair (π[i], π[i+1]), which is what `(X Φ)` until operands need.
///
/// Lifted state ids are the CSR entry indices of the base matrix, so the edges
/// leaving base state u are the contiguous ids [first_edge(u), first_edge(u+1)).
class LiftedChain {
 public:
  explicit LiftedChain(const SparseMatrix& base) : base_rows_(base.rows()) {
    first_edge_.reserve(base_rows_ + 1);
    std::size_t id = 0;
    for (std::size_t u = 0; u < base_rows_; ++u) {
      first_edge_.push_back(id);
      for (const auto& e : base.row(u)) {
        source_.push_back(u);
        target_.push_back(e.col);
        prob_.push_back(e.value);
        ++id;
      }
    }
    first_edge_.push_back(id);

    std::vector<Transition> triplets;
    for (std::size_t edge = 0; edge < id; ++edge) {
      const auto v = target_[edge];
      for (std::size_t next = first_edge_[v]; next < first_edge_[v + 1]; ++next) {
        triplets.push_back({edge, next, prob_[next]});
      }
    }
    matrix_ = SparseMatrix(id, std::move(triplets));
  }

  std::size_t size() const noexcept { return source_.size(); }
  const SparseMatrix& matrix() const noexcept { return matrix_; }
  std::size_t source(std::size_t edge) const { return source_[edge]; }
  std::size_t target(std::size_t edge) const { return target_[edge]; }

  /// Lifted states whose source satisfies the base set.
  StateSet at_source(const StateSet& base) const {
    StateSet out(size());
    for (std::size_t e = 0; e < size(); ++e) {
      if (base.contains(source_[e])) out.insert(e);
    }
    return out;
  }

  /// Lifted states whose target satisfies the base set.
  StateSet at_target(const StateSet& base) const {
    StateSet out(size());
    for (std::size_t e = 0; e < size(); ++e) {
      if (base.contains(target_[e])) out.insert(e);
    }
    return out;
  }

  /// Lifted reward: r(u) on edge (u,v).
  std::vector<double> source_rewards(std::span<const double> r) const {
    std::vector<double> out(size());
    for (std::size_t e = 0; e < size(); ++e) out[e] = r[source_[e]];
    return out;
  }

  /// Base value at u = Σ_v P(u,v) · lifted[(u,v)]; +∞ propagates.
  std::vector<double> project(std::span<const double> lifted) const {
    std::vector<double> out(base_rows_, 0.0);
    for (std::size_t u = 0; u < base_rows_; ++u) {
      double acc = 0.0;
      for (std::size_t e = first_edge_[u]; e < first_edge_[u + 1]; ++e) {
        acc = std::isinf(lifted[e]) ? lifted[e] : acc + prob_[e] * lifted[e];
        if (std::isinf(acc)) break;
      }
      out[u] = acc;
    }
    return out;
  }

 private:
  std::size_t base_rows_;
  std::vector<std::size_t> first_edge_;
  std::vector<std::size_t> source_, target_;
  std::vector<double> prob_;
  SparseMatrix matrix_;
};

}  // namespace courtmc::engine
