#pragma once

#include <cctype>
#include <charconv>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "courtmc/core/error.hpp"
#include "courtmc/query/ast.hpp"

// Query grammar (whitespace-insensitive):
//
//   query       := steadyOp | stateFormula
//   stateFormula:= and ("|" and)*
//   and         := unary ("&" unary)*
//   unary       := "!" unary | primary
//   primary     := "true" | "false" | STRING | "x" "=" INT | "(" stateFormula ")"
//                | "P" bound open path close
//                | "R" "{" STRING "}" "=?" open rewardPath close
//                | "filter" "(" ("state"|"avg"|"min"|"max") "," query "," stateFormula ")"
//   steadyOp    := "S" "=?" open stateFormula close
//   bound       := "=?" | (">=" | ">" | "<=" | "<") NUMBER          NUMBER in [0,1]
//   open/close  := "[" "]" | "(" ")"
//   path        := "X" stateFormula
//                | "F" stateFormula | "F" "<=" INT stateFormula
//                | operand "U" operand | stateFormula "U" "<=" INT stateFormula
//                | "(" "X" stateFormula ")"
//   operand     := "(" "X" stateFormula ")" | "X" stateFormula | stateFormula
//   rewardPath  := "C" "<=" INT | "F" stateFormula | operand "U" operand     C bound >= 1
//
// Precedence: ! > & > |. S=? is accepted only as the whole query or as a
// filter's inner formula.

namespace courtmc::query {

namespace detail {

struct Token {
  enum class Kind { String, Number, Ident, Symbol, End };
  Kind kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (c == '"') {
      std::string text;
      ++i;
      while (i < src.size() && src[i] != '"') {
        if (src[i] == '\\' && i + 1 < src.size()) ++i;
        text += src[i++];
      }
      if (i >= src.size()) throw SyntaxError(ErrorCode::SyntaxError, start, "unterminated string literal");
      ++i;
      out.push_back({Token::Kind::String, std::move(text), start});
    } else if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      while (i < src.size() && (std::isdigit(static_cast<unsigned char>(src[i])) || src[i] == '.')) ++i;
      if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < src.size() && (src[j] == '+' || src[j] == '-')) ++j;
        if (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
          i = j;
          while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
        }
      }
      out.push_back({Token::Kind::Number, std::string(src.substr(start, i - start)), start});
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() && is_ident_char(src[i])) ++i;
      out.push_back({Token::Kind::Ident, std::string(src.substr(start, i - start)), start});
    } else if ((c == '<' || c == '>') && i + 1 < src.size() && src[i + 1] == '=') {
      out.push_back({Token::Kind::Symbol, std::string(src.substr(i, 2)), start});
      i += 2;
    } else if (std::string_view("[](){},!&|=?<>").find(c) != std::string_view::npos) {
      out.push_back({Token::Kind::Symbol, std::string(1, c), start});
      ++i;
    } else {
      throw SyntaxError(ErrorCode::SyntaxError, start, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Token::Kind::End, "", src.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  StateFormula parse_query() {
    auto f = query_formula();
    if (peek().kind != Token::Kind::End) fail("end of query");
    return f;
  }

 private:
  using Kind = Token::Kind;

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  bool at_symbol(std::string_view s, std::size_t ahead = 0) const {
    const auto& t = peek(ahead);
    return t.kind == Kind::Symbol && t.text == s;
  }
  bool at_ident(std::string_view s, std::size_t ahead = 0) const {
    const auto& t = peek(ahead);
    return t.kind == Kind::Ident && t.text == s;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const auto& t = peek();
    const std::string found = t.kind == Kind::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(ErrorCode::SyntaxError, t.pos, "expected " + expected + ", found " + found);
  }
  [[noreturn]] void unsupported(const std::string& what) const {
    throw SyntaxError(ErrorCode::UnknownConstruct, peek().pos, what);
  }

  void expect_symbol(std::string_view s) {
    if (!at_symbol(s)) fail("'" + std::string(s) + "'");
    advance();
  }

  std::string expect_string() {
    if (peek().kind != Kind::String) fail("a quoted name");
    return advance().text;
  }

  unsigned long expect_integer(const std::string& what) {
    const auto& t = peek();
    unsigned long value = 0;
    if (t.kind != Kind::Number) fail(what);
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) fail(what);
    advance();
    return value;
  }

  double expect_probability() {
    const auto& t = peek();
    double value = 0;
    if (t.kind != Kind::Number) fail("a probability");
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size() || value < 0.0 || value > 1.0) {
      fail("a probability in [0,1]");
    }
    advance();
    return value;
  }

  /// "[" or "(" ; returns the matching closer.
  std::string open_bracket() {
    if (at_symbol("[")) {
      advance();
      return "]";
    }
    if (at_symbol("(")) {
      advance();
      return ")";
    }
    fail("'[' or '('");
  }

  void expect_query_marker() {
    if (at_symbol("<=") || at_symbol(">=") || at_symbol("<") || at_symbol(">")) {
      unsupported("bounded reward and steady-state operators are not supported; use =?");
    }
    expect_symbol("=");
    expect_symbol("?");
  }

  // query := steadyOp | stateFormula
  StateFormula query_formula() {
    if (at_ident("S")) return steady_op();
    return state_formula();
  }

  StateFormula state_formula() {
    auto lhs = conjunction();
    while (at_symbol("|")) {
      advance();
      lhs = disj(std::move(lhs), conjunction());
    }
    return lhs;
  }

  StateFormula conjunction() {
    auto lhs = unary();
    while (at_symbol("&")) {
      advance();
      lhs = conj(std::move(lhs), unary());
    }
    return lhs;
  }

  StateFormula unary() {
    if (at_symbol("!")) {
      advance();
      return neg(unary());
    }
    return primary();
  }

  StateFormula primary() {
    const auto& t = peek();
    if (t.kind == Kind::String) return prop(advance().text);
    if (at_symbol("(")) {
      advance();
      auto f = state_formula();
      expect_symbol(")");
      return f;
    }
    if (t.kind != Kind::Ident) fail("a state formula");

    if (t.text == "true") {
      advance();
      return tt();
    }
    if (t.text == "false") {
      advance();
      return neg(tt());
    }
    if (t.text == "x") {
      advance();
      expect_symbol("=");
      return index_eq(static_cast<long long>(expect_integer("a state index")));
    }
    if (t.text == "P") return prob_op();
    if (t.text == "R") return reward_op();
    if (t.text == "filter") return filter_op();
    if (t.text == "S") unsupported("S=? is only supported as a whole query or as a filter's inner formula");
    if (t.text == "X" || t.text == "F" || t.text == "G" || t.text == "W") {
      unsupported("path operator '" + t.text + "' nested inside a state formula");
    }
    fail("a state formula");
  }

  StateFormula steady_op() {
    advance();  // S
    expect_query_marker();
    const auto close = open_bracket();
    auto f = state_formula();
    expect_symbol(close);
    return steady(std::move(f));
  }

  ProbBound bound() {
    if (at_symbol("=")) {
      advance();
      expect_symbol("?");
      return ProbBound::query();
    }
    for (std::string_view op : {">=", ">", "<=", "<"}) {
      if (at_symbol(op)) {
        advance();
        const double p = expect_probability();
        if (op == ">=") return ProbBound::at_least(p);
        if (op == ">") return ProbBound::at_least(p, true);
        if (op == "<=") return ProbBound::at_most(p);
        return ProbBound::at_most(p, true);
      }
    }
    fail("'=?' or a probability bound");
  }

  StateFormula prob_op() {
    advance();  // P
    auto b = bound();
    const auto close = open_bracket();
    auto p = path();
    expect_symbol(close);
    return prob(std::move(b), std::move(p));
  }

  bool at_next_wrapped() const { return at_symbol("(") && at_ident("X", 1); }

  Operand operand() {
    if (at_next_wrapped()) {
      advance();
      advance();
      auto f = state_formula();
      expect_symbol(")");
      return at_next(std::move(f));
    }
    if (at_ident("X")) {
      advance();
      return at_next(state_formula());
    }
    return at_state(state_formula());
  }

  std::optional<unsigned long> step_bound() {
    if (!at_symbol("<=")) return std::nullopt;
    advance();
    return expect_integer("a step bound");
  }

  PathFormula path() {
    if (at_ident("G")) unsupported("'G' (globally) is not supported");
    if (at_ident("F")) {
      advance();
      if (auto k = step_bound()) return bounded_until(tt(), state_formula(), *k);
      return eventually(state_formula());
    }
    auto lhs = operand();
    if (!at_ident("U")) {
      if (lhs.kind == Operand::Kind::NextWrapped) return Next{std::move(lhs.formula)};
      fail("'U'");
    }
    advance();
    if (auto k = step_bound()) {
      auto rhs = operand();
      if (lhs.kind != Operand::Kind::State || rhs.kind != Operand::Kind::State) {
        unsupported("bounded until takes state-formula operands only");
      }
      return BoundedUntil{std::move(lhs.formula), std::move(rhs.formula), *k};
    }
    return Until{std::move(lhs), operand()};
  }

  StateFormula reward_op() {
    advance();  // R
    expect_symbol("{");
    auto name = expect_string();
    expect_symbol("}");
    expect_query_marker();
    const auto close = open_bracket();
    auto p = reward_path();
    expect_symbol(close);
    return reward(std::move(name), std::move(p));
  }

  RewardPath reward_path() {
    if (at_ident("C")) {
      advance();
      if (!at_symbol("<=")) fail("'<=' after C");
      advance();
      const auto n = expect_integer("a step count");
      if (n < 1) throw SyntaxError(ErrorCode::SyntaxError, peek().pos, "cumulative bound must be at least 1");
      return Cumulative{n};
    }
    if (at_ident("I") || at_ident("S")) unsupported("instantaneous and long-run reward paths are not supported");
    if (at_ident("F")) {
      advance();
      if (at_symbol("<=")) unsupported("bounded reachability rewards are not supported");
      return Reach{state_formula()};
    }
    auto lhs = operand();
    if (!at_ident("U")) {
      if (lhs.kind == Operand::Kind::NextWrapped) unsupported("next-step reward paths are not supported");
      fail("'U'");
    }
    advance();
    if (at_symbol("<=")) unsupported("bounded until is not supported in reward paths");
    return RewardUntil{std::move(lhs), operand()};
  }

  StateFormula filter_op() {
    advance();  // filter
    expect_symbol("(");
    if (peek().kind != Kind::Ident) fail("a filter operator");
    const auto& name = peek().text;
    FilterOp op;
    if (name == "state") {
      op = FilterOp::State;
    } else if (name == "avg") {
      op = FilterOp::Avg;
    } else if (name == "min") {
      op = FilterOp::Min;
    } else if (name == "max") {
      op = FilterOp::Max;
    } else if (name == "sum" || name == "count" || name == "forall" || name == "exists" || name == "print" ||
               name == "printall" || name == "first" || name == "range" || name == "argmin" || name == "argmax") {
      unsupported("filter operator '" + name + "' is not supported");
    } else {
      fail("one of state, avg, min, max");
    }
    advance();
    expect_symbol(",");
    auto inner = query_formula();
    expect_symbol(",");
    auto clause = state_formula();
    expect_symbol(")");
    return filter(op, std::move(inner), std::move(clause));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a query. Throws SyntaxError with code SYNTAX_ERROR or UNKNOWN_CONSTRUCT.
inline StateFormula parse_query(std::string_view text) { return detail::Parser(text).parse_query(); }

}  // namespace courtmc::query
