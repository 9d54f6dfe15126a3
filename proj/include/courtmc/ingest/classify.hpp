#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "courtmc/core/error.hpp"
#include "courtmc/core/state.hpp"
#include "courtmc/ingest/corpus.hpp"

namespace courtmc::ingest {

struct SentimentCuts {
  double neg_max = -0.05;
  double pos_min = 0.05;
};

/// Means per speaker type; empty when no record of that type carries the raw value.
struct SpeakerMeans {
  std::optional<double> length;
  std::optional<double> pauses;
};

struct ClassThresholds {
  SpeakerMeans justice;
  SpeakerMeans advocate;
  SentimentCuts cuts;

  const SpeakerMeans& for_record(const UtteranceRecord& r) const { return r.is_justice ? justice : advocate; }
};

/// Arithmetic means of raw lengths and pauses per speaker type.
///
/// With `require_both`, a file that carries raw values must have them for both
/// justices and advocates; otherwise a class is only required once a record of
/// that type needs classifying.
inline ClassThresholds compute_thresholds(std::span<const Trace> traces, SentimentCuts cuts = {},
                                          bool require_both = true) {
  if (!(cuts.neg_max < cuts.pos_min)) throw std::invalid_argument("sentiment cut points need neg_max < pos_min");
  struct Acc {
    double sum = 0.0;
    std::size_t n = 0;
    std::optional<double> mean() const { return n ? std::optional(sum / static_cast<double>(n)) : std::nullopt; }
  };
  Acc len[2], pau[2];
  bool raw_length = false, raw_pauses = false;
  for (const auto& t : traces) {
    for (const auto& r : t.records) {
      const int k = r.is_justice ? 0 : 1;
      if (r.token_length) {
        raw_length = true;
        len[k].sum += static_cast<double>(*r.token_length);
        ++len[k].n;
      }
      if (r.pause_count) {
        raw_pauses = true;
        pau[k].sum += static_cast<double>(*r.pause_count);
        ++pau[k].n;
      }
    }
  }
  ClassThresholds t{{len[0].mean(), pau[0].mean()}, {len[1].mean(), pau[1].mean()}, cuts};
  if (require_both) {
    auto check = [](bool raw, const std::optional<double>& m, const char* what) {
      if (raw && !m) throw Error(ErrorCode::EmptyClass, std::string("no ") + what + " records with raw values");
    };
    check(raw_length, t.justice.length, "justice length");
    check(raw_length, t.advocate.length, "advocate length");
    check(raw_pauses, t.justice.pauses, "justice pause");
    check(raw_pauses, t.advocate.pauses, "advocate pause");
  }
  return t;
}

struct Classes {
  Sentiment sentiment;
  LengthClass length;
  PauseClass pause;

  friend bool operator==(const Classes&, const Classes&) = default;
};

inline Sentiment classify_sentiment(double score, const SentimentCuts& cuts) {
  if (score >= cuts.pos_min) return Sentiment::Pos;
  if (score <= cuts.neg_max) return Sentiment::Neg;
  return Sentiment::Neu;
}

/// Pre-assigned classes pass through. Raw values above the speaker-type mean are
/// long / more pauses; a value equal to the mean falls on the short / less side.
inline Classes classify_record(const UtteranceRecord& r, const ClassThresholds& t) {
  const auto& means = t.for_record(r);
  const char* who = r.is_justice ? "justice" : "advocate";
  auto mean_of = [&](const std::optional<double>& m, const char* what) {
    if (!m) throw Error(ErrorCode::EmptyClass, std::string("no ") + who + " " + what + " mean available");
    return *m;
  };

  Classes c{};
  if (r.sentiment_class) {
    c.sentiment = *r.sentiment_class;
  } else if (r.sentiment_score) {
    c.sentiment = classify_sentiment(*r.sentiment_score, t.cuts);
  } else {
    throw InputError(ErrorCode::MalformedRow, r.line, "record has neither sentiment score nor class");
  }

  if (r.length_class) {
    c.length = *r.length_class;
  } else if (r.token_length) {
    c.length = static_cast<double>(*r.token_length) > mean_of(means.length, "length") ? LengthClass::LoU
                                                                                       : LengthClass::SoU;
  } else {
    throw InputError(ErrorCode::MalformedRow, r.line, "record has neither length nor length class");
  }

  if (r.pause_class) {
    c.pause = *r.pause_class;
  } else if (r.pause_count) {
    c.pause = static_cast<double>(*r.pause_count) > mean_of(means.pauses, "pause") ? PauseClass::MP : PauseClass::LP;
  } else {
    throw InputError(ErrorCode::MalformedRow, r.line, "record has neither pause count nor pause class");
  }
  return c;
}

}  // namespace courtmc::ingest
