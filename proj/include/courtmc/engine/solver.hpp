#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "courtmc/core/error.hpp"
#include "courtmc/core/model.hpp"
#include "courtmc/core/state_set.hpp"
#include "courtmc/engine/graph.hpp"

namespace courtmc::engine {

enum class SolverMethod { ValueIteration, GaussSeidel };

struct SolverConfig {
  SolverMethod method = SolverMethod::GaussSeidel;
  double epsilon = 1e-9;  // relative, on successive iterates
  std::size_t max_iterations = 1'000'000;
};

inline void check_config(const SolverConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("solver epsilon must be positive");
}

/// Solves x_s = b_s + Σ_t P(s,t) x_t for s in `unknown`; every other state keeps
/// its value in `x`, which must be finite wherever an unknown state points.
inline void solve_fixpoint(const SparseMatrix& m, const StateSet& unknown, std::span<const double> b,
                           std::vector<double>& x, const SolverConfig& cfg) {
  check_config(cfg);
  const auto states = unknown.indices();
  if (states.empty()) return;

  std::vector<std::size_t> local(m.rows(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < states.size(); ++i) local[states[i]] = i;

  // Split each row into a constant part (known successors) and links between unknowns.
  struct Link {
    std::size_t to;
    double p;
  };
  std::vector<double> constant(states.size(), 0.0), self(states.size(), 0.0);
  std::vector<std::vector<Link>> links(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto s = states[i];
    constant[i] = b[s];
    for (const auto& e : m.row(s)) {
      const auto j = local[e.col];
      if (j == static_cast<std::size_t>(-1)) {
        constant[i] += e.value * x[e.col];
      } else if (j == i && cfg.method == SolverMethod::GaussSeidel) {
        self[i] += e.value;
      } else {
        links[i].push_back({j, e.value});
      }
    }
  }

  std::vector<double> cur(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) cur[i] = x[states[i]];
  std::vector<double> prev = cur;

  auto converged = [&](const std::vector<double>& a, const std::vector<double>& b_) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (std::abs(a[i] - b_[i]) > cfg.epsilon * std::abs(a[i])) return false;
    }
    return true;
  };

  for (std::size_t iter = 0; iter < cfg.max_iterations; ++iter) {
    if (cfg.method == SolverMethod::GaussSeidel) {
      prev = cur;
      for (std::size_t i = 0; i < states.size(); ++i) {
        double acc = constant[i];
        for (const auto& l : links[i]) acc += l.p * cur[l.to];
        cur[i] = acc / (1.0 - self[i]);
      }
    } else {
      for (std::size_t i = 0; i < states.size(); ++i) {
        double acc = constant[i];
        for (const auto& l : links[i]) acc += l.p * prev[l.to];
        cur[i] = acc;
      }
    }
    if (converged(cur, prev)) {
      for (std::size_t i = 0; i < states.size(); ++i) x[states[i]] = cur[i];
      return;
    }
    if (cfg.method == SolverMethod::ValueIteration) prev = cur;
  }
  throw Error(ErrorCode::NoConvergence,
              "no convergence after " + std::to_string(cfg.max_iterations) + " iterations");
}

inline double clamp_probability(double v) {
  if (v < -1e-7 || v > 1.0 + 1e-7) throw std::logic_error("probability " + std::to_string(v) + " outside [0,1]");
  return std::clamp(v, 0.0, 1.0);
}

/// P · 1_sat
inline std::vector<double> next_probabilities(const SparseMatrix& m, const StateSet& sat) {
  std::vector<double> ind(m.rows(), 0.0);
  sat.for_each([&](std::size_t s) { ind[s] = 1.0; });
  auto v = m.multiply(ind);
  for (auto& p : v) p = clamp_probability(p);
  return v;
}

/// Pr(Φ1 U<=k Φ2) per state.
inline std::vector<double> bounded_until_probabilities(const SparseMatrix& m, const StateSet& sat1,
                                                       const StateSet& sat2, std::size_t k) {
  const std::size_t n = m.rows();
  std::vector<double> v(n, 0.0);
  sat2.for_each([&](std::size_t s) { v[s] = 1.0; });
  const auto maybe = sat1 - sat2;
  for (std::size_t i = 0; i < k; ++i) {
    const auto pv = m.multiply(v);
    maybe.for_each([&](std::size_t s) { v[s] = pv[s]; });
  }
  for (auto& p : v) p = clamp_probability(p);
  return v;
}

/// Pr(Φ1 U Φ2) per state: graph precomputation, then an iterative solve on the rest.
inline std::vector<double> until_probabilities(const SparseMatrix& m, const StateSet& sat1, const StateSet& sat2,
                                               const SolverConfig& cfg) {
  const std::size_t n = m.rows();
  const auto zero = prob0(m, sat1, sat2);
  const auto one = prob1(m, sat1, sat2);
  std::vector<double> x(n, 0.0);
  one.for_each([&](std::size_t s) { x[s] = 1.0; });
  const auto maybe = ~(zero | one);
  const std::vector<double> b(n, 0.0);
  solve_fixpoint(m, maybe, b, x, cfg);
  for (auto& p : x) p = clamp_probability(p);
  return x;
}

/// Expected reward accumulated over steps 0..n-1.
inline std::vector<double> cumulative_rewards(const SparseMatrix& m, std::span<const double> r, std::size_t steps) {
  std::vector<double> u(m.rows(), 0.0);
  for (std::size_t i = 0; i < steps; ++i) {
    auto pu = m.multiply(u);
    for (std::size_t s = 0; s < u.size(); ++s) u[s] = r[s] + pu[s];
  }
  return u;
}

/// Expected reward accumulated before Φ2 is reached while Φ1 holds. States
/// satisfying Φ2 get 0 (their own reward is not counted); states from which
/// Φ1 U Φ2 holds with probability < 1 get +∞.
inline std::vector<double> until_rewards(const SparseMatrix& m, std::span<const double> r, const StateSet& sat1,
                                         const StateSet& sat2, const SolverConfig& cfg) {
  const std::size_t n = m.rows();
  const auto one = prob1(m, sat1, sat2);
  std::vector<double> x(n, kInfinity);
  sat2.for_each([&](std::size_t s) { x[s] = 0.0; });
  const auto solve = one - sat2;
  solve.for_each([&](std::size_t s) { x[s] = 0.0; });
  solve_fixpoint(m, solve, r, x, cfg);
  return x;
}

/// Stationary distribution of the sub-chain on `members` (a BSCC), in member order.
inline std::vector<double> stationary_distribution(const SparseMatrix& m, const std::vector<std::size_t>& members) {
  const std::size_t k = members.size();
  if (k == 1) return {1.0};
  std::vector<std::size_t> local(m.rows(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < k; ++i) local[members[i]] = i;

  // (P_B^T - I) π = 0 with the last equation replaced by Σ π = 1.
  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& e : m.row(members[i])) {
      const auto j = local[e.col];
      if (j != k - 1) trip.emplace_back(static_cast<int>(j), static_cast<int>(i), e.value);
    }
    if (i != k - 1) trip.emplace_back(static_cast<int>(i), static_cast<int>(i), -1.0);
    trip.emplace_back(static_cast<int>(k - 1), static_cast<int>(i), 1.0);
  }
  Eigen::SparseMatrix<double> a(static_cast<int>(k), static_cast<int>(k));
  a.setFromTriplets(trip.begin(), trip.end());
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<int>(k));
  rhs[static_cast<int>(k - 1)] = 1.0;

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "stationary system is singular");
  Eigen::VectorXd pi = lu.solve(rhs);
  if (lu.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "stationary solve failed");

  std::vector<double> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = std::clamp(pi[static_cast<int>(i)], 0.0, 1.0);
  return out;
}

/// Long-run fraction of time spent in Sat(Φ), per start state. Uses the
/// stationary distribution of each bottom SCC (long-run average occupancy, so
/// periodic components are fine) weighted by the probability of reaching it.
inline std::vector<double> steady_state_probabilities(const SparseMatrix& m, const StateSet& sat,
                                                      const SolverConfig& cfg) {
  const std::size_t n = m.rows();
  std::vector<double> x(n, 0.0);
  StateSet in_bottom(n);
  for (const auto& members : bottom_sccs(m)) {
    const auto pi = stationary_distribution(m, members);
    double mass = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (sat.contains(members[i])) mass += pi[i];
    }
    for (auto s : members) {
      x[s] = mass;
      in_bottom.insert(s);
    }
  }
  const std::vector<double> b(n, 0.0);
  solve_fixpoint(m, ~in_bottom, b, x, cfg);
  for (auto& p : x) p = clamp_probability(p);
  return x;
}

}  // namespace courtmc::engine
