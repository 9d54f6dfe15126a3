#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "courtmc/core/error.hpp"

namespace courtmc {

inline constexpr int kBenchSize = 9;

/// One of the nine seats J1..J9, numbered from 1.
class JusticeId {
 public:
  constexpr JusticeId() = default;
  explicit constexpr JusticeId(int seat) : seat_(static_cast<std::uint8_t>(seat)) {
    if (seat < 1 || seat > kBenchSize) throw Error(ErrorCode::MalformedState, "justice seat out of range");
  }

  constexpr int seat() const noexcept { return seat_; }
  std::string name() const { return "J" + std::to_string(seat_); }

  /// Accepts "J1".."J9".
  static std::optional<JusticeId> parse(std::string_view text) {
    if (text.size() != 2 || text[0] != 'J' || text[1] < '1' || text[1] > '9') return std::nullopt;
    return JusticeId(text[1] - '0');
  }

  friend constexpr auto operator<=>(JusticeId, JusticeId) = default;

 private:
  std::uint8_t seat_ = 1;
};

enum class StateKind : std::uint8_t { Initial, Utterance, Final };
enum class Side : std::uint8_t { JJ, PP, RR, SU };
enum class Amicus : std::uint8_t { Yes, No };
enum class WinSide : std::uint8_t { Respondents = 0, Petitioners = 1 };
enum class Vote : std::uint8_t { Respondents = 0, Petitioners = 1, Unknown };
enum class UtteranceType : std::uint8_t { Opening, Closing, Conclopening, Normal, Rebuttal, Intervening };
enum class EndType : std::uint8_t { MS, SF, LG, NR };
enum class Sentiment : std::uint8_t { Pos, Neg, Neu };
enum class LengthClass : std::uint8_t { LoU, SoU };
enum class PauseClass : std::uint8_t { MP, LP };

using VoteVector = std::array<Vote, kBenchSize>;

/// Tags carried by an Intervening utterance. Zeroed for every other type.
struct InterveningDetail {
  Side target = Side::PP;
  bool during_rebuttal = false;
  bool amicus_target = false;
  bool chained = false;

  friend auto operator<=>(const InterveningDetail&, const InterveningDetail&) = default;
};

struct Utterance {
  std::optional<JusticeId> speaker;  // empty for advocates (NREQ)
  Side side = Side::JJ;
  Amicus ac = Amicus::No;
  WinSide win = WinSide::Respondents;
  VoteVector votes{};
  UtteranceType type = UtteranceType::Normal;
  InterveningDetail detail{};
  EndType end = EndType::SF;
  Sentiment sentiment = Sentiment::Neu;
  LengthClass length = LengthClass::SoU;
  PauseClass pause = PauseClass::LP;

  friend auto operator<=>(const Utterance&, const Utterance&) = default;
};

/// A state of the interaction chain: the INITIAL/FINAL sentinels or one utterance tuple.
class StateTuple {
 public:
  static StateTuple initial() { return StateTuple(StateKind::Initial, std::nullopt); }
  static StateTuple final_state() { return StateTuple(StateKind::Final, std::nullopt); }
  static StateTuple utterance(Utterance u) {
    if (u.type != UtteranceType::Intervening) u.detail = InterveningDetail{};
    return StateTuple(StateKind::Utterance, u);
  }

  StateKind kind() const noexcept { return kind_; }
  bool is_sentinel() const noexcept { return kind_ != StateKind::Utterance; }
  const Utterance& fields() const {
    if (!utterance_) throw Error(ErrorCode::MalformedState, "sentinel state has no utterance fields");
    return *utterance_;
  }
  const std::optional<Utterance>& maybe_fields() const noexcept { return utterance_; }

  friend auto operator<=>(const StateTuple&, const StateTuple&) = default;

 private:
  StateTuple(StateKind kind, std::optional<Utterance> u) : kind_(kind), utterance_(std::move(u)) {}

  StateKind kind_;
  std::optional<Utterance> utterance_;
};

// ---- enum text forms ------------------------------------------------------

constexpr std::string_view to_string(Side s) {
  switch (s) {
    case Side::JJ: return "JJ";
    case Side::PP: return "PP";
    case Side::RR: return "RR";
    case Side::SU: return "SU";
  }
  return "?";
}
constexpr std::string_view to_string(Amicus a) { return a == Amicus::Yes ? "ACYES" : "ACNO"; }
constexpr std::string_view to_string(WinSide w) { return w == WinSide::Petitioners ? "1" : "0"; }
constexpr std::string_view to_string(Vote v) {
  switch (v) {
    case Vote::Respondents: return "0";
    case Vote::Petitioners: return "1";
    case Vote::Unknown: return "IU";
  }
  return "?";
}
constexpr std::string_view to_string(UtteranceType t) {
  switch (t) {
    case UtteranceType::Opening: return "Opening";
    case UtteranceType::Closing: return "Closing";
    case UtteranceType::Conclopening: return "Conclopening";
    case UtteranceType::Normal: return "Normal";
    case UtteranceType::Rebuttal: return "Rebuttal";
    case UtteranceType::Intervening: return "Intervening";
  }
  return "?";
}
constexpr std::string_view to_string(EndType e) {
  switch (e) {
    case EndType::MS: return "MS";
    case EndType::SF: return "SF";
    case EndType::LG: return "LG";
    case EndType::NR: return "NR";
  }
  return "?";
}
constexpr std::string_view to_string(Sentiment s) {
  switch (s) {
    case Sentiment::Pos: return "Pos";
    case Sentiment::Neg: return "Neg";
    case Sentiment::Neu: return "Neu";
  }
  return "?";
}
constexpr std::string_view to_string(LengthClass l) { return l == LengthClass::LoU ? "LoU" : "SoU"; }
constexpr std::string_view to_string(PauseClass p) { return p == PauseClass::MP ? "MP" : "LP"; }

inline std::optional<Side> parse_side(std::string_view s) {
  if (s == "JJ") return Side::JJ;
  if (s == "PP") return Side::PP;
  if (s == "RR") return Side::RR;
  if (s == "SU") return Side::SU;
  return std::nullopt;
}
inline std::optional<Amicus> parse_amicus(std::string_view s) {
  if (s == "ACYES") return Amicus::Yes;
  if (s == "ACNO") return Amicus::No;
  return std::nullopt;
}
inline std::optional<WinSide> parse_win_side(std::string_view s) {
  if (s == "0") return WinSide::Respondents;
  if (s == "1") return WinSide::Petitioners;
  return std::nullopt;
}
inline std::optional<UtteranceType> parse_utterance_type(std::string_view s) {
  for (auto t : {UtteranceType::Opening, UtteranceType::Closing, UtteranceType::Conclopening,
                 UtteranceType::Normal, UtteranceType::Rebuttal, UtteranceType::Intervening}) {
    if (s == to_string(t)) return t;
  }
  return std::nullopt;
}
inline std::optional<EndType> parse_end_type(std::string_view s) {
  for (auto e : {EndType::MS, EndType::SF, EndType::LG, EndType::NR}) {
    if (s == to_string(e)) return e;
  }
  return std::nullopt;
}
inline std::optional<Sentiment> parse_sentiment(std::string_view s) {
  for (auto v : {Sentiment::Pos, Sentiment::Neg, Sentiment::Neu}) {
    if (s == to_string(v)) return v;
  }
  return std::nullopt;
}
inline std::optional<LengthClass> parse_length_class(std::string_view s) {
  if (s == "LoU") return LengthClass::LoU;
  if (s == "SoU") return LengthClass::SoU;
  return std::nullopt;
}
inline std::optional<PauseClass> parse_pause_class(std::string_view s) {
  if (s == "MP") return PauseClass::MP;
  if (s == "LP") return PauseClass::LP;
  return std::nullopt;
}

/// Votes as a 9-character string over {0,1,U}, J1..J9 order.
inline std::optional<VoteVector> parse_votes(std::string_view s) {
  if (s.size() != kBenchSize) return std::nullopt;
  VoteVector votes{};
  for (int i = 0; i < kBenchSize; ++i) {
    switch (s[i]) {
      case '0': votes[i] = Vote::Respondents; break;
      case '1': votes[i] = Vote::Petitioners; break;
      case 'U': votes[i] = Vote::Unknown; break;
      default: return std::nullopt;
    }
  }
  return votes;
}

inline std::string compact_votes(const VoteVector& votes) {
  std::string out;
  for (auto v : votes) out += v == Vote::Unknown ? 'U' : (v == Vote::Petitioners ? '1' : '0');
  return out;
}

/// "(0,1,IU,...)" as it appears in vote-vector labels and result tables.
inline std::string vote_vector_label(const VoteVector& votes) {
  std::string out = "(";
  for (int i = 0; i < kBenchSize; ++i) {
    if (i) out += ',';
    out += to_string(votes[i]);
  }
  return out + ")";
}

/// Most specific type tag, e.g. "InterveningPPRE", "InterveningACRR", "Normal".
inline std::string type_tag(const Utterance& u) {
  if (u.type != UtteranceType::Intervening) return std::string(to_string(u.type));
  const auto side = std::string(to_string(u.detail.target));
  if (u.detail.during_rebuttal) return "Intervening" + side + "RE";
  if (u.detail.amicus_target) return "InterveningAC" + side;
  if (u.detail.chained) return "Intervening" + side + "JJ";
  return "Intervening" + side;
}

inline std::string speaker_label(const Utterance& u) { return u.speaker ? u.speaker->name() : "NREQ"; }

/// Tuple rendering used in reports: "(J6,JJ,ACNO,0,(0,1,...),InterveningPP,MS,Neg,LoU,MP)".
inline std::string describe(const StateTuple& s) {
  switch (s.kind()) {
    case StateKind::Initial: return "INITIAL";
    case StateKind::Final: return "FINAL";
    case StateKind::Utterance: break;
  }
  const auto& u = s.fields();
  std::string out = "(";
  out += speaker_label(u);
  out += ',';
  out += to_string(u.side);
  out += ',';
  out += to_string(u.ac);
  out += ',';
  out += to_string(u.win);
  out += ',';
  out += vote_vector_label(u.votes);
  out += ',';
  out += type_tag(u);
  out += ',';
  out += to_string(u.end);
  out += ',';
  out += to_string(u.sentiment);
  out += ',';
  out += to_string(u.length);
  out += ',';
  out += to_string(u.pause);
  return out + ")";
}

/// Checks the tuple invariants; throws MALFORMED_STATE naming the first violation.
inline void check_well_formed(const StateTuple& s, JusticeId chief) {
  if (s.is_sentinel()) return;
  const auto& u = s.fields();
  auto fail = [&](const char* why) { throw Error(ErrorCode::MalformedState, describe(s) + ": " + why); };
  if ((u.side == Side::JJ) != u.speaker.has_value()) fail("side JJ must coincide with a justice speaker");
  switch (u.type) {
    case UtteranceType::Opening:
    case UtteranceType::Closing:
    case UtteranceType::Conclopening:
      if (u.speaker != chief) fail("opening/closing/conclopening must be spoken by the chief justice");
      break;
    case UtteranceType::Intervening:
      if (u.side != Side::JJ) fail("intervening utterances are spoken by justices");
      if (u.detail.target != Side::PP && u.detail.target != Side::RR) fail("intervening target must be PP or RR");
      if (u.detail.during_rebuttal && u.detail.target != Side::PP) fail("rebuttal interventions target PP");
      break;
    case UtteranceType::Normal:
    case UtteranceType::Rebuttal:
      if (u.side == Side::JJ) fail("normal/rebuttal utterances are spoken by advocates");
      break;
  }
}

}  // namespace courtmc
