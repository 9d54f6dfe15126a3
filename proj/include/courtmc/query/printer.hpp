#pragma once

#include <charconv>
#include <string>

#include "courtmc/core/error.hpp"
#include "courtmc/query/ast.hpp"

namespace courtmc::query {

namespace detail {

enum Precedence { kOr = 1, kAnd = 2, kUnary = 3 };

inline int precedence(const StateFormula& f) {
  if (f.is<Or>()) return kOr;
  if (f.is<And>()) return kAnd;
  return kUnary;
}

inline std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string print(const StateFormula& f, int min_prec);

inline std::string print_bound(const ProbBound& b) {
  if (b.is_query()) return "=?";
  const auto& iv = b.interval();
  if (iv.hi == 1.0 && !iv.hi_open) return (iv.lo_open ? ">" : ">=") + shortest(iv.lo);
  if (iv.lo == 0.0 && !iv.lo_open) return (iv.hi_open ? "<" : "<=") + shortest(iv.hi);
  throw Error(ErrorCode::UnknownConstruct, "probability interval has no single-comparison form");
}

inline std::string print_operand(const Operand& o) {
  if (o.kind == Operand::Kind::NextWrapped) return "(X " + print(*o.formula, kUnary) + ")";
  return print(*o.formula, kUnary);
}

inline std::string print_path(const PathFormula& p) {
  if (const auto* n = std::get_if<Next>(&p)) return "X " + print(*n->operand, kUnary);
  if (const auto* u = std::get_if<Until>(&p)) {
    if (u->lhs.kind == Operand::Kind::State && u->lhs.formula->is<True>() && u->rhs.kind == Operand::Kind::State) {
      return "F " + print(*u->rhs.formula, kUnary);
    }
    return print_operand(u->lhs) + " U " + print_operand(u->rhs);
  }
  const auto& b = std::get<BoundedUntil>(p);
  const auto k = std::to_string(b.bound);
  if (b.lhs->is<True>()) return "F<=" + k + " " + print(*b.rhs, kUnary);
  return print(*b.lhs, kUnary) + " U<=" + k + " " + print(*b.rhs, kUnary);
}

inline std::string print_reward_path(const RewardPath& p) {
  if (const auto* c = std::get_if<Cumulative>(&p)) return "C<=" + std::to_string(c->steps);
  if (const auto* r = std::get_if<Reach>(&p)) return "F " + print(*r->target, kUnary);
  const auto& u = std::get<RewardUntil>(p);
  return print_operand(u.lhs) + " U " + print_operand(u.rhs);
}

inline std::string print(const StateFormula& f, int min_prec) {
  std::string out = std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, True>) {
          return "true";
        } else if constexpr (std::is_same_v<T, Prop>) {
          return quoted(n.name);
        } else if constexpr (std::is_same_v<T, StateIndexEq>) {
          return "x=" + std::to_string(n.index);
        } else if constexpr (std::is_same_v<T, Not>) {
          return "!" + print(*n.operand, kUnary);
        } else if constexpr (std::is_same_v<T, And>) {
          return print(*n.lhs, kAnd) + "&" + print(*n.rhs, kUnary);
        } else if constexpr (std::is_same_v<T, Or>) {
          return print(*n.lhs, kOr) + "|" + print(*n.rhs, kAnd);
        } else if constexpr (std::is_same_v<T, ProbOp>) {
          return "P" + print_bound(n.bound) + "[" + print_path(n.path) + "]";
        } else if constexpr (std::is_same_v<T, SteadyOp>) {
          return "S=?[" + print(*n.operand, kOr) + "]";
        } else if constexpr (std::is_same_v<T, RewardOp>) {
          return "R{" + quoted(n.reward) + "}=?[" + print_reward_path(n.path) + "]";
        } else {
          static_assert(std::is_same_v<T, Filter>);
          return "filter(" + std::string(to_string(n.op)) + "," + print(*n.inner, kOr) + "," + print(*n.clause, kOr) + ")";
        }
      },
      f.node);
  return precedence(f) < min_prec ? "(" + out + ")" : out;
}

}  // namespace detail

/// Canonical text form; `parse_query(pretty_print(f)) == f`.
inline std::string pretty_print(const StateFormula& f) { return detail::print(f, detail::kOr); }
inline std::string pretty_print(const PathFormula& p) { return detail::print_path(p); }

}  // namespace courtmc::query
