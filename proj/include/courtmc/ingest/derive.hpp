#pragma once

#include <optional>
#include <string>
#include <vector>

#include "courtmc/core/error.hpp"
#include "courtmc/core/state.hpp"
#include "courtmc/ingest/corpus.hpp"

namespace courtmc::ingest {

struct TypeAssignment {
  UtteranceType type;
  InterveningDetail detail{};

  friend bool operator==(const TypeAssignment&, const TypeAssignment&) = default;
};

/// Infers the utterance type of every record in a trace.
///
/// Rules, in order:
///  - the first and last utterances must be the chief's: Opening and Closing;
///  - advocates: PP utterances after the last RR utterance are Rebuttal, the rest Normal;
///  - a middle chief utterance is Conclopening when the advocates speaking just
///    before and just after it differ (or one side is missing), and Intervening
///    when it sits inside one advocate's segment;
///  - other justice utterances are Intervening.
/// An Intervening utterance targets the latest PP/RR advocate utterance; it is
/// during_rebuttal if that utterance is a Rebuttal, amicus_target if that advocate
/// is ACYES, and chained if the previous utterance is an Intervening one by a
/// different justice. A type_hint on a record overrides the inferred type.
inline std::vector<TypeAssignment> derive_utterance_types(const Trace& trace, JusticeId chief) {
  const auto& rs = trace.records;
  const std::size_t n = rs.size();
  auto where = [&](std::size_t i) { return rs[i].line ? std::optional(rs[i].line) : std::nullopt; };
  auto is_chief = [&](std::size_t i) { return rs[i].justice() == chief; };

  if (n < 2) throw InputError(ErrorCode::TraceShape, std::nullopt, "case '" + trace.case_id + "' has fewer than 2 utterances");
  if (!is_chief(0)) throw InputError(ErrorCode::TraceShape, where(0), "case '" + trace.case_id + "' does not open with the chief justice");
  if (!is_chief(n - 1)) throw InputError(ErrorCode::TraceShape, where(n - 1), "case '" + trace.case_id + "' does not close with the chief justice");

  std::optional<std::size_t> last_rr;
  for (std::size_t i = 0; i < n; ++i) {
    if (!rs[i].is_justice && rs[i].side == Side::RR) last_rr = i;
  }

  std::vector<std::optional<TypeAssignment>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rs[i].is_justice) continue;
    if (rs[i].type_hint) {
      out[i] = TypeAssignment{*rs[i].type_hint};
    } else {
      const bool rebuttal = rs[i].side == Side::PP && last_rr && i > *last_rr;
      out[i] = TypeAssignment{rebuttal ? UtteranceType::Rebuttal : UtteranceType::Normal};
    }
  }

  // Advocate identity for segment boundaries.
  auto same_speaker = [&](std::size_t a, std::size_t b) {
    return rs[a].speaker_name == rs[b].speaker_name && rs[a].side == rs[b].side && rs[a].ac == rs[b].ac;
  };
  auto advocate_before = [&](std::size_t i) -> std::optional<std::size_t> {
    for (std::size_t k = i; k-- > 0;) {
      if (!rs[k].is_justice) return k;
    }
    return std::nullopt;
  };
  auto advocate_after = [&](std::size_t i) -> std::optional<std::size_t> {
    for (std::size_t k = i + 1; k < n; ++k) {
      if (!rs[k].is_justice) return k;
    }
    return std::nullopt;
  };
  auto target_before = [&](std::size_t i) -> std::optional<std::size_t> {
    for (std::size_t k = i; k-- > 0;) {
      if (!rs[k].is_justice && (rs[k].side == Side::PP || rs[k].side == Side::RR)) return k;
    }
    return std::nullopt;
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (!rs[i].is_justice) continue;
    UtteranceType type;
    if (rs[i].type_hint) {
      type = *rs[i].type_hint;
    } else if (i == 0) {
      type = UtteranceType::Opening;
    } else if (i == n - 1) {
      type = UtteranceType::Closing;
    } else if (is_chief(i)) {
      const auto before = advocate_before(i), after = advocate_after(i);
      type = before && after && same_speaker(*before, *after) ? UtteranceType::Intervening : UtteranceType::Conclopening;
    } else {
      type = UtteranceType::Intervening;
    }

    TypeAssignment a{type};
    if (type == UtteranceType::Intervening) {
      const auto t = target_before(i);
      if (!t) {
        throw InputError(ErrorCode::NoAdvocateContext, where(i),
                         "case '" + trace.case_id + "': justice " + rs[i].speaker_name +
                             " intervenes before any advocate has spoken");
      }
      a.detail.target = rs[*t].side;
      a.detail.during_rebuttal = out[*t]->type == UtteranceType::Rebuttal;
      if (a.detail.during_rebuttal) a.detail.target = Side::PP;
      a.detail.amicus_target = rs[*t].ac == Amicus::Yes;
      a.detail.chained = i > 0 && rs[i - 1].is_justice && out[i - 1]->type == UtteranceType::Intervening &&
                         rs[i - 1].speaker_name != rs[i].speaker_name;
    }
    out[i] = a;
  }

  std::vector<TypeAssignment> result;
  result.reserve(n);
  for (auto& a : out) result.push_back(*a);
  return result;
}

}  // namespace courtmc::ingest
