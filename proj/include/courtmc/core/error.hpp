#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace courtmc {

enum class ErrorCode {
  // chain-core
  RowNotStochastic,
  NonpositiveProbability,
  DeadlockState,
  IndexOutOfRange,
  MalformedState,
  MalformedModel,
  // ingest
  MalformedRow,
  InconsistentCaseMetadata,
  GapInPositions,
  EmptyClass,
  NoAdvocateContext,
  TraceShape,
  EmptyCorpus,
  Io,
  // query-lang
  SyntaxError,
  UnknownConstruct,
  PlaceholderMissing,
  // engine
  QueryOperatorInBooleanContext,
  NoConvergence,
  UnknownReward,
  UnsupportedOperand,
  FilterEmpty,
  FilterStateNotUnique,
  ScaleExceeded,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::RowNotStochastic: return "ROW_NOT_STOCHASTIC";
    case ErrorCode::NonpositiveProbability: return "NONPOSITIVE_PROBABILITY";
    case ErrorCode::DeadlockState: return "DEADLOCK_STATE";
    case ErrorCode::IndexOutOfRange: return "INDEX_OUT_OF_RANGE";
    case ErrorCode::MalformedState: return "MALFORMED_STATE";
    case ErrorCode::MalformedModel: return "MALFORMED_MODEL";
    case ErrorCode::MalformedRow: return "MALFORMED_ROW";
    case ErrorCode::InconsistentCaseMetadata: return "INCONSISTENT_CASE_METADATA";
    case ErrorCode::GapInPositions: return "GAP_IN_POSITIONS";
    case ErrorCode::EmptyClass: return "EMPTY_CLASS";
    case ErrorCode::NoAdvocateContext: return "NO_ADVOCATE_CONTEXT";
    case ErrorCode::TraceShape: return "TRACE_SHAPE";
    case ErrorCode::EmptyCorpus: return "EMPTY_CORPUS";
    case ErrorCode::Io: return "IO_ERROR";
    case ErrorCode::SyntaxError: return "SYNTAX_ERROR";
    case ErrorCode::UnknownConstruct: return "UNKNOWN_CONSTRUCT";
    case ErrorCode::PlaceholderMissing: return "PLACEHOLDER_MISSING";
    case ErrorCode::QueryOperatorInBooleanContext: return "QUERY_OPERATOR_IN_BOOLEAN_CONTEXT";
    case ErrorCode::NoConvergence: return "NO_CONVERGENCE";
    case ErrorCode::UnknownReward: return "UNKNOWN_REWARD";
    case ErrorCode::UnsupportedOperand: return "UNSUPPORTED_OPERAND";
    case ErrorCode::FilterEmpty: return "FILTER_EMPTY";
    case ErrorCode::FilterStateNotUnique: return "FILTER_STATE_NOT_UNIQUE";
    case ErrorCode::ScaleExceeded: return "SCALE_EXCEEDED";
  }
  return "UNKNOWN";
}

/// Every failure raised by the library. `what()` is prefixed with the code name.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Ingest failure tied to a line of the input file (1-based, header is line 1).
class InputError : public Error {
 public:
  InputError(ErrorCode code, std::optional<std::size_t> line, const std::string& message)
      : Error(code, line ? "line " + std::to_string(*line) + ": " + message : message), line_(line) {}

  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  std::optional<std::size_t> line_;
};

/// Parse failure with the 0-based character offset into the query text.
class SyntaxError : public Error {
 public:
  SyntaxError(ErrorCode code, std::size_t position, const std::string& expected)
      : Error(code, "at position " + std::to_string(position) + ": " + expected),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace courtmc
