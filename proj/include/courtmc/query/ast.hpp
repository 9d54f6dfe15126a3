#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>

#include "courtmc/core/result.hpp"

namespace courtmc::query {

/// Owning pointer with value semantics: deep copy, deep equality.
template <typename T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT(implicit)
  Box(const Box& o) : ptr_(std::make_unique<T>(*o.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& o) {
    if (this != &o) ptr_ = std::make_unique<T>(*o.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;

  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a.ptr_ == *b.ptr_; }

 private:
  std::unique_ptr<T> ptr_;
};

struct StateFormula;

struct True {
  friend bool operator==(const True&, const True&) = default;
};
struct Prop {
  std::string name;
  friend bool operator==(const Prop&, const Prop&) = default;
};
/// `x=j`: the state whose index is j.
struct StateIndexEq {
  long long index;
  friend bool operator==(const StateIndexEq&, const StateIndexEq&) = default;
};
struct Not {
  Box<StateFormula> operand;
  friend bool operator==(const Not&, const Not&) = default;
};
struct And {
  Box<StateFormula> lhs, rhs;
  friend bool operator==(const And&, const And&) = default;
};
struct Or {
  Box<StateFormula> lhs, rhs;
  friend bool operator==(const Or&, const Or&) = default;
};

/// Until operand: a state formula evaluated at the current position, or
/// `(X Φ)` evaluated at the next position.
struct Operand {
  enum class Kind { State, NextWrapped };
  Kind kind;
  Box<StateFormula> formula;
  friend bool operator==(const Operand&, const Operand&) = default;
};

struct Next {
  Box<StateFormula> operand;
  friend bool operator==(const Next&, const Next&) = default;
};
/// Φ1 U Φ2; `F Φ` normalizes to `true U Φ`.
struct Until {
  Operand lhs, rhs;
  friend bool operator==(const Until&, const Until&) = default;
};
/// Φ1 U<=k Φ2; `F<=k Φ` normalizes to `true U<=k Φ`.
struct BoundedUntil {
  Box<StateFormula> lhs, rhs;
  unsigned long bound;
  friend bool operator==(const BoundedUntil&, const BoundedUntil&) = default;
};
using PathFormula = std::variant<Next, Until, BoundedUntil>;

/// C<=n, n >= 1
struct Cumulative {
  unsigned long steps;
  friend bool operator==(const Cumulative&, const Cumulative&) = default;
};
/// F Φ
struct Reach {
  Box<StateFormula> target;
  friend bool operator==(const Reach&, const Reach&) = default;
};
struct RewardUntil {
  Operand lhs, rhs;
  friend bool operator==(const RewardUntil&, const RewardUntil&) = default;
};
using RewardPath = std::variant<Cumulative, Reach, RewardUntil>;

struct ProbOp {
  ProbBound bound;
  PathFormula path;
  friend bool operator==(const ProbOp&, const ProbOp&) = default;
};
/// S=?[Φ]
struct SteadyOp {
  Box<StateFormula> operand;
  friend bool operator==(const SteadyOp&, const SteadyOp&) = default;
};
/// R{"name"}=?[...]
struct RewardOp {
  std::string reward;
  RewardPath path;
  friend bool operator==(const RewardOp&, const RewardOp&) = default;
};

enum class FilterOp { State, Avg, Min, Max };

struct Filter {
  FilterOp op;
  Box<StateFormula> inner;
  Box<StateFormula> clause;
  friend bool operator==(const Filter&, const Filter&) = default;
};

struct StateFormula {
  using Node = std::variant<True, Prop, StateIndexEq, Not, And, Or, ProbOp, SteadyOp, RewardOp, Filter>;
  Node node;

  template <typename T>
  bool is() const noexcept {
    return std::holds_alternative<T>(node);
  }
  template <typename T>
  const T& as() const {
    return std::get<T>(node);
  }

  friend bool operator==(const StateFormula&, const StateFormula&) = default;
};

constexpr std::string_view to_string(FilterOp op) {
  switch (op) {
    case FilterOp::State: return "state";
    case FilterOp::Avg: return "avg";
    case FilterOp::Min: return "min";
    case FilterOp::Max: return "max";
  }
  return "?";
}

// ---- construction helpers ------------------------------------------------

inline StateFormula tt() { return {True{}}; }
inline StateFormula prop(std::string name) { return {Prop{std::move(name)}}; }
inline StateFormula index_eq(long long j) { return {StateIndexEq{j}}; }
inline StateFormula neg(StateFormula f) { return {Not{std::move(f)}}; }
inline StateFormula conj(StateFormula a, StateFormula b) { return {And{std::move(a), std::move(b)}}; }
inline StateFormula disj(StateFormula a, StateFormula b) { return {Or{std::move(a), std::move(b)}}; }
inline Operand at_state(StateFormula f) { return {Operand::Kind::State, std::move(f)}; }
inline Operand at_next(StateFormula f) { return {Operand::Kind::NextWrapped, std::move(f)}; }
inline StateFormula prob(ProbBound b, PathFormula p) { return {ProbOp{std::move(b), std::move(p)}}; }
inline StateFormula steady(StateFormula f) { return {SteadyOp{std::move(f)}}; }
inline StateFormula reward(std::string name, RewardPath p) { return {RewardOp{std::move(name), std::move(p)}}; }
inline StateFormula filter(FilterOp op, StateFormula inner, StateFormula clause) {
  return {Filter{op, std::move(inner), std::move(clause)}};
}
inline PathFormula next(StateFormula f) { return Next{std::move(f)}; }
inline PathFormula until(StateFormula a, StateFormula b) { return Until{at_state(std::move(a)), at_state(std::move(b))}; }
inline PathFormula eventually(StateFormula f) { return until(tt(), std::move(f)); }
inline PathFormula bounded_until(StateFormula a, StateFormula b, unsigned long k) {
  return BoundedUntil{std::move(a), std::move(b), k};
}

}  // namespace courtmc::query
