#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "courtmc/core/error.hpp"
#include "courtmc/core/labels.hpp"
#include "courtmc/core/state.hpp"
#include "courtmc/core/state_set.hpp"

namespace courtmc {

inline constexpr double kRowSumTolerance = 1e-9;

struct Transition {
  std::size_t src;
  std::size_t dst;
  double p;
};

/// Compressed-row sparse matrix. Entries within a row are sorted by column.
class SparseMatrix {
 public:
  struct Entry {
    std::size_t col;
    double value;
  };

  SparseMatrix() = default;

  /// Duplicate (src,dst) pairs are summed.
  SparseMatrix(std::size_t n, std::vector<Transition> triplets) : row_start_(n + 1, 0) {
    std::sort(triplets.begin(), triplets.end(), [](const Transition& a, const Transition& b) {
      return a.src != b.src ? a.src < b.src : a.dst < b.dst;
    });
    for (const auto& t : triplets) {
      if (t.src >= n || t.dst >= n) throw Error(ErrorCode::IndexOutOfRange, "transition endpoint out of range");
      if (!entries_.empty() && last_src_ == t.src && entries_.back().col == t.dst) {
        entries_.back().value += t.p;
        continue;
      }
      entries_.push_back({t.dst, t.p});
      last_src_ = t.src;
      ++row_start_[t.src + 1];
    }
    for (std::size_t i = 0; i < n; ++i) row_start_[i + 1] += row_start_[i];
  }

  std::size_t rows() const noexcept { return row_start_.empty() ? 0 : row_start_.size() - 1; }
  std::size_t nonzeros() const noexcept { return entries_.size(); }

  std::span<const Entry> row(std::size_t i) const {
    return {entries_.data() + row_start_[i], entries_.data() + row_start_[i + 1]};
  }

  double at(std::size_t i, std::size_t j) const {
    for (const auto& e : row(i)) {
      if (e.col == j) return e.value;
    }
    return 0.0;
  }

  /// y = A x
  std::vector<double> multiply(std::span<const double> x) const {
    std::vector<double> y(rows(), 0.0);
    for (std::size_t i = 0; i < rows(); ++i) {
      double acc = 0.0;
      for (const auto& e : row(i)) acc += e.value * x[e.col];
      y[i] = acc;
    }
    return y;
  }

  std::vector<Transition> triplets() const {
    std::vector<Transition> out;
    out.reserve(nonzeros());
    for (std::size_t i = 0; i < rows(); ++i) {
      for (const auto& e : row(i)) out.push_back({i, e.col, e.value});
    }
    return out;
  }

  /// Predecessor lists, used by the graph algorithms.
  std::vector<std::vector<std::size_t>> predecessors() const {
    std::vector<std::vector<std::size_t>> pre(rows());
    for (std::size_t i = 0; i < rows(); ++i) {
      for (const auto& e : row(i)) pre[e.col].push_back(i);
    }
    return pre;
  }

 private:
  std::vector<std::size_t> row_start_;
  std::vector<Entry> entries_;
  std::size_t last_src_ = 0;
};

struct StochasticIssue {
  std::size_t state;
  ErrorCode code;
  double deviation;  // |row sum - 1| for ROW_NOT_STOCHASTIC, offending value for NONPOSITIVE_PROBABILITY
};

struct StochasticReport {
  std::vector<double> row_deviation;
  std::vector<StochasticIssue> issues;

  double max_deviation() const {
    double m = 0.0;
    for (double d : row_deviation) m = std::max(m, d);
    return m;
  }
  bool accepted() const { return issues.empty(); }
};

/// Row-stochasticity check: sums within 1e-9 of 1, entries in (0,1], no deadlocks.
inline StochasticReport validate_stochastic(const SparseMatrix& m) {
  StochasticReport report;
  report.row_deviation.resize(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto row = m.row(i);
    if (row.empty()) {
      report.row_deviation[i] = 1.0;
      report.issues.push_back({i, ErrorCode::DeadlockState, 1.0});
      continue;
    }
    double sum = 0.0;
    for (const auto& e : row) {
      sum += e.value;
      if (!(e.value > 0.0 && e.value <= 1.0)) {
        report.issues.push_back({i, ErrorCode::NonpositiveProbability, e.value});
      }
    }
    const double dev = std::abs(sum - 1.0);
    report.row_deviation[i] = dev;
    if (!(dev <= kRowSumTolerance)) report.issues.push_back({i, ErrorCode::RowNotStochastic, dev});
  }
  return report;
}

/// Named non-negative per-state reward.
class RewardStructure {
 public:
  RewardStructure(std::string name, std::vector<double> values) : name_(std::move(name)), values_(std::move(values)) {
    for (double v : values_) {
      if (!(v >= 0.0) || std::isinf(v)) throw Error(ErrorCode::MalformedModel, "reward '" + name_ + "' has a negative or non-finite value");
    }
  }

  const std::string& name() const noexcept { return name_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  RewardStructure scaled(double factor, std::string name) const {
    auto v = values_;
    for (auto& x : v) x *= factor;
    return {std::move(name), std::move(v)};
  }

 private:
  std::string name_;
  std::vector<double> values_;
};

/// Generic labeled DTMC with state rewards: what the checking engine consumes.
///
/// Immutable after construction; the constructor rejects matrices that fail
/// `validate_stochastic`.
class LabeledChain {
 public:
  LabeledChain(SparseMatrix transitions, std::size_t initial, PropositionRegistry labels,
               std::vector<RewardStructure> rewards = {})
      : transitions_(std::move(transitions)), initial_(initial), labels_(std::move(labels)) {
    const std::size_t n = transitions_.rows();
    if (n == 0) throw Error(ErrorCode::MalformedModel, "chain has no states");
    if (labels_.state_count() != n) throw Error(ErrorCode::MalformedModel, "label registry size does not match state count");
    if (initial_ >= n) throw Error(ErrorCode::IndexOutOfRange, "initial state index out of range");
    const auto report = validate_stochastic(transitions_);
    if (!report.accepted()) {
      const auto& first = report.issues.front();
      throw Error(first.code, "state " + std::to_string(first.state) + ": deviation " + std::to_string(first.deviation));
    }
    for (auto& r : rewards) add_reward(std::move(r));
  }

  std::size_t size() const noexcept { return transitions_.rows(); }
  std::size_t initial_index() const noexcept { return initial_; }
  const SparseMatrix& transitions() const noexcept { return transitions_; }
  const PropositionRegistry& labels() const noexcept { return labels_; }

  const std::map<std::string, RewardStructure>& rewards() const noexcept { return rewards_; }
  const RewardStructure* find_reward(const std::string& name) const {
    auto it = rewards_.find(name);
    return it == rewards_.end() ? nullptr : &it->second;
  }

  LabeledChain with_rewards(std::vector<RewardStructure> extra) const {
    LabeledChain copy = *this;
    for (auto& r : extra) copy.add_reward(std::move(r));
    return copy;
  }

  /// The singleton {j} denoted by `x=j`.
  StateSet state_index_prop(long long j) const {
    if (j < 0 || static_cast<std::size_t>(j) >= size()) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "state index " + std::to_string(j) + " outside [0," + std::to_string(size()) + ")");
    }
    return StateSet::singleton(size(), static_cast<std::size_t>(j));
  }

 private:
  void add_reward(RewardStructure r) {
    if (r.size() != size()) throw Error(ErrorCode::MalformedModel, "reward '" + r.name() + "' has wrong length");
    auto name = r.name();
    rewards_.insert_or_assign(std::move(name), std::move(r));
  }

  SparseMatrix transitions_;
  std::size_t initial_;
  PropositionRegistry labels_;
  std::map<std::string, RewardStructure> rewards_;
};

enum class RecurrenceMode { RestartLoop, FinalSelfLoop };

constexpr std::string_view to_string(RecurrenceMode m) {
  return m == RecurrenceMode::RestartLoop ? "restart" : "selfloop";
}

inline std::optional<RecurrenceMode> parse_recurrence_mode(std::string_view s) {
  if (s == "restart" || s == "RestartLoop") return RecurrenceMode::RestartLoop;
  if (s == "selfloop" || s == "FinalSelfLoop") return RecurrenceMode::FinalSelfLoop;
  return std::nullopt;
}

/// Discrete-time Markov reward model over interaction states.
///
/// Immutable after construction. On top of the chain checks, the constructor
/// enforces exactly one INITIAL and one FINAL state, pairwise distinct tuples,
/// and the FINAL closure required by `recurrence`. The INITIAL state is the
/// chain's initial state.
class MarkovModel {
 public:
  MarkovModel(std::vector<StateTuple> states, SparseMatrix transitions, JusticeId chief,
              RecurrenceMode recurrence, std::vector<RewardStructure> rewards = {})
      : states_(std::move(states)),
        chief_(chief),
        recurrence_(recurrence),
        chain_(std::move(transitions), locate_sentinels(states_).first, PropositionRegistry(states_, chief_),
               std::move(rewards)) {
    final_ = locate_sentinels(states_).second;
    auto sorted = states_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorCode::MalformedModel, "duplicate state tuple");
    }
    const std::size_t loop_target = recurrence_ == RecurrenceMode::RestartLoop ? initial_index() : final_;
    if (std::abs(chain_.transitions().at(final_, loop_target) - 1.0) > kRowSumTolerance) {
      throw Error(ErrorCode::MalformedModel, "FINAL is not closed as required by recurrence mode '" +
                                                 std::string(to_string(recurrence_)) + "'");
    }
  }

  std::size_t size() const noexcept { return states_.size(); }
  std::span<const StateTuple> states() const noexcept { return states_; }
  const StateTuple& state(std::size_t i) const { return states_.at(i); }
  std::size_t initial_index() const noexcept { return chain_.initial_index(); }
  std::size_t final_index() const noexcept { return final_; }
  JusticeId chief() const noexcept { return chief_; }
  RecurrenceMode recurrence() const noexcept { return recurrence_; }

  const LabeledChain& chain() const noexcept { return chain_; }
  const SparseMatrix& transitions() const noexcept { return chain_.transitions(); }
  const PropositionRegistry& labels() const noexcept { return chain_.labels(); }
  const std::map<std::string, RewardStructure>& rewards() const noexcept { return chain_.rewards(); }
  const RewardStructure* find_reward(const std::string& name) const { return chain_.find_reward(name); }
  StateSet state_index_prop(long long j) const { return chain_.state_index_prop(j); }

  MarkovModel with_rewards(std::vector<RewardStructure> extra) const {
    MarkovModel copy = *this;
    copy.chain_ = chain_.with_rewards(std::move(extra));
    return copy;
  }

 private:
  static std::pair<std::size_t, std::size_t> locate_sentinels(std::span<const StateTuple> states) {
    std::optional<std::size_t> initial, final_index;
    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto kind = states[i].kind();
      if (kind == StateKind::Utterance) continue;
      auto& slot = kind == StateKind::Initial ? initial : final_index;
      if (slot) throw Error(ErrorCode::MalformedModel, "more than one " + describe(states[i]) + " state");
      slot = i;
    }
    if (!initial || !final_index) throw Error(ErrorCode::MalformedModel, "model needs exactly one INITIAL and one FINAL state");
    return {*initial, *final_index};
  }

  std::vector<StateTuple> states_;
  JusticeId chief_;
  RecurrenceMode recurrence_;
  LabeledChain chain_;
  std::size_t final_ = 0;
};

inline StochasticReport validate_stochastic(const MarkovModel& model) {
  return validate_stochastic(model.transitions());
}

}  // namespace courtmc
