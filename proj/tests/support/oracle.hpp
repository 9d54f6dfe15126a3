#pragma once

// Reference implementations used only by tests. They share no code with the
// engine: dense matrices, explicit path enumeration and Gaussian elimination.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "courtmc/core/error.hpp"
#include "courtmc/core/labels.hpp"
#include "courtmc/core/model.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<double>>;
using Path = std::vector<std::size_t>;
using Labels = std::vector<std::set<std::string>>;

struct DenseChain {
  Matrix p;
  Labels labels;
  std::vector<std::vector<double>> rewards;  // named r0, r1, ...

  std::size_t size() const { return p.size(); }
  bool has(std::size_t s, const std::string& a) const { return labels[s].count(a) > 0; }

  courtmc::LabeledChain to_chain() const {
    std::vector<courtmc::Transition> t;
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j = 0; j < size(); ++j) {
        if (p[i][j] > 0.0) t.push_back({i, j, p[i][j]});
      }
    }
    std::vector<courtmc::RewardStructure> r;
    for (std::size_t k = 0; k < rewards.size(); ++k) r.emplace_back("r" + std::to_string(k), rewards[k]);
    return courtmc::LabeledChain(courtmc::SparseMatrix(size(), std::move(t)), 0,
                                 courtmc::PropositionRegistry(std::span<const std::set<std::string>>(labels)),
                                 std::move(r));
  }
};

inline constexpr std::size_t kMaxDepth = 14;
inline constexpr std::size_t kMaxStates = 12;

/// Verdict of a path predicate on a finite prefix: true/false once the prefix
/// decides every extension, nullopt while undecided.
using PrefixPredicate = std::function<std::optional<bool>(const Path&)>;

/// Sums Pr(Cyl(prefix)) over the prefixes of length <= depth+1 that the
/// predicate decides as true. Undecided prefixes at the depth limit count as false.
inline double brute_force_path_probability(const DenseChain& c, std::size_t start, const PrefixPredicate& pred,
                                           std::size_t depth) {
  if (depth > kMaxDepth || c.size() > kMaxStates) {
    throw courtmc::Error(courtmc::ErrorCode::ScaleExceeded, "oracle limited to depth 14 and 12 states");
  }
  double total = 0.0;
  Path path{start};
  std::function<void(double)> walk = [&](double pr) {
    if (auto v = pred(path)) {
      if (*v) total += pr;
      return;
    }
    if (path.size() > depth) return;
    const auto s = path.back();
    for (std::size_t t = 0; t < c.size(); ++t) {
      if (c.p[s][t] <= 0.0) continue;
      path.push_back(t);
      walk(pr * c.p[s][t]);
      path.pop_back();
    }
  };
  walk(1.0);
  return total;
}

/// E[Σ_{i<n} r(π[i])] by enumerating every path with n states.
inline double brute_force_cumulative(const DenseChain& c, std::size_t start, const std::vector<double>& r, std::size_t n) {
  if (n > kMaxDepth || c.size() > kMaxStates) {
    throw courtmc::Error(courtmc::ErrorCode::ScaleExceeded, "oracle limited to depth 14 and 12 states");
  }
  double total = 0.0;
  std::function<void(std::size_t, std::size_t, double, double)> walk = [&](std::size_t s, std::size_t len, double pr,
                                                                          double acc) {
    acc += r[s];
    if (len == n) {
      total += pr * acc;
      return;
    }
    for (std::size_t t = 0; t < c.size(); ++t) {
      if (c.p[s][t] > 0.0) walk(t, len + 1, pr * c.p[s][t], acc);
    }
  };
  if (n > 0) walk(start, 1, 1.0, 0.0);
  return total;
}

/// Predicate for Φ1 U<=k Φ2 given membership tests.
inline PrefixPredicate bounded_until_predicate(std::function<bool(std::size_t)> phi1,
                                               std::function<bool(std::size_t)> phi2, std::size_t k) {
  return [=](const Path& p) -> std::optional<bool> {
    const auto s = p.back();
    if (phi2(s)) return true;
    if (!phi1(s)) return false;
    if (p.size() > k) return false;
    return std::nullopt;
  };
}

/// Solves A x = b by Gaussian elimination with partial pivoting.
inline std::vector<double> gauss_solve(Matrix a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= a[i][k] * x[k];
    x[i] = acc / a[i][i];
  }
  return x;
}

/// States that can reach `target` through `through` (plain BFS on the dense matrix).
inline std::vector<bool> can_reach(const DenseChain& c, const std::vector<bool>& through, const std::vector<bool>& target) {
  std::vector<bool> reach = target;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t s = 0; s < c.size(); ++s) {
      if (reach[s] || !through[s]) continue;
      for (std::size_t t = 0; t < c.size(); ++t) {
        if (c.p[s][t] > 0.0 && reach[t]) {
          reach[s] = true;
          changed = true;
          break;
        }
      }
    }
  }
  return reach;
}

/// Pr(Φ1 U Φ2) per state by a direct linear solve over the states that can
/// still reach Φ2.
inline std::vector<double> dense_until(const DenseChain& c, const std::vector<bool>& phi1, const std::vector<bool>& phi2) {
  const std::size_t n = c.size();
  const auto reach = can_reach(c, phi1, phi2);
  std::vector<std::size_t> unknown;
  std::vector<std::size_t> pos(n, n);
  for (std::size_t s = 0; s < n; ++s) {
    if (reach[s] && !phi2[s]) {
      pos[s] = unknown.size();
      unknown.push_back(s);
    }
  }
  Matrix a(unknown.size(), std::vector<double>(unknown.size(), 0.0));
  std::vector<double> b(unknown.size(), 0.0);
  for (std::size_t i = 0; i < unknown.size(); ++i) {
    const auto s = unknown[i];
    a[i][i] = 1.0;
    for (std::size_t t = 0; t < n; ++t) {
      if (c.p[s][t] <= 0.0) continue;
      if (phi2[t]) {
        b[i] += c.p[s][t];
      } else if (pos[t] < n) {
        a[i][pos[t]] -= c.p[s][t];
      }
    }
  }
  const auto x = gauss_solve(a, b);
  std::vector<double> out(n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    if (phi2[s]) out[s] = 1.0;
    if (pos[s] < n) out[s] = x[pos[s]];
  }
  return out;
}

/// Expected reward before reaching Φ; +∞ where Pr(F Φ) < 1.
inline std::vector<double> dense_reach_reward(const DenseChain& c, const std::vector<double>& r,
                                              const std::vector<bool>& target) {
  const std::size_t n = c.size();
  const auto pr = dense_until(c, std::vector<bool>(n, true), target);
  std::vector<std::size_t> unknown;
  std::vector<std::size_t> pos(n, n);
  for (std::size_t s = 0; s < n; ++s) {
    if (!target[s] && pr[s] > 1.0 - 1e-9) {
      pos[s] = unknown.size();
      unknown.push_back(s);
    }
  }
  Matrix a(unknown.size(), std::vector<double>(unknown.size(), 0.0));
  std::vector<double> b(unknown.size(), 0.0);
  for (std::size_t i = 0; i < unknown.size(); ++i) {
    const auto s = unknown[i];
    a[i][i] = 1.0;
    b[i] = r[s];
    for (std::size_t t = 0; t < n; ++t) {
      if (c.p[s][t] > 0.0 && pos[t] < n) a[i][pos[t]] -= c.p[s][t];
    }
  }
  const auto x = gauss_solve(a, b);
  std::vector<double> out(n, std::numeric_limits<double>::infinity());
  for (std::size_t s = 0; s < n; ++s) {
    if (target[s]) out[s] = 0.0;
    if (pos[s] < n) out[s] = x[pos[s]];
  }
  return out;
}

/// Random chain: 2..max_states states, out-degree 1..3, labels "a"/"b" each with
/// probability 1/2, and `reward_count` reward vectors with values in [0,5).
inline DenseChain random_chain(std::mt19937& rng, std::size_t max_states = 10, std::size_t reward_count = 1,
                               std::size_t max_degree = 3) {
  std::uniform_int_distribution<std::size_t> size_dist(2, max_states);
  const std::size_t n = size_dist(rng);
  DenseChain c;
  c.p.assign(n, std::vector<double>(n, 0.0));
  c.labels.resize(n);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t s = 0; s < n; ++s) {
    std::uniform_int_distribution<std::size_t> deg_dist(1, std::min(max_degree, n));
    const auto deg = deg_dist(rng);
    std::vector<std::size_t> targets(n);
    for (std::size_t i = 0; i < n; ++i) targets[i] = i;
    std::shuffle(targets.begin(), targets.end(), rng);
    double total = 0.0;
    for (std::size_t i = 0; i < deg; ++i) {
      c.p[s][targets[i]] = weight(rng);
      total += c.p[s][targets[i]];
    }
    for (std::size_t i = 0; i < deg; ++i) c.p[s][targets[i]] /= total;
    if (coin(rng)) c.labels[s].insert("a");
    if (coin(rng)) c.labels[s].insert("b");
  }
  std::uniform_real_distribution<double> rv(0.0, 5.0);
  for (std::size_t k = 0; k < reward_count; ++k) {
    std::vector<double> r(n);
    for (auto& x : r) x = rv(rng);
    c.rewards.push_back(std::move(r));
  }
  return c;
}

inline std::vector<bool> label_mask(const DenseChain& c, const std::string& a) {
  std::vector<bool> m(c.size());
  for (std::size_t s = 0; s < c.size(); ++s) m[s] = c.has(s, a);
  return m;
}

}  // namespace oracle
