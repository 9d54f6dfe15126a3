#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "courtmc/core/error.hpp"
#include "courtmc/core/labels.hpp"
#include "courtmc/core/model.hpp"
#include "courtmc/core/state.hpp"
#include "courtmc/ingest/classify.hpp"
#include "courtmc/ingest/corpus.hpp"
#include "courtmc/ingest/derive.hpp"

namespace courtmc::ingest {

/// The chief justice is not identified in the source data; seat 1 is assumed.
inline constexpr JusticeId kDefaultChief{1};

struct BuildOptions {
  JusticeId chief = kDefaultChief;
  RecurrenceMode recurrence = RecurrenceMode::RestartLoop;
  SentimentCuts cuts{};
};

/// Turns one derived, classified record into its state tuple.
inline StateTuple to_state(const UtteranceRecord& r, const TypeAssignment& a, const Classes& c) {
  Utterance u;
  u.speaker = r.justice();
  u.side = r.side;
  u.ac = r.ac;
  u.win = r.win;
  u.votes = r.votes;
  u.type = a.type;
  u.detail = a.detail;
  u.end = r.end;
  u.sentiment = c.sentiment;
  u.length = c.length;
  u.pause = c.pause;
  return StateTuple::utterance(u);
}

/// Builds the chain from transition counts over all traces.
///
/// States are interned by full tuple equality: INITIAL first, utterance states in
/// order of first appearance, FINAL last. INITIAL moves uniformly to the distinct
/// Opening states, each Closing state moves to FINAL, and FINAL loops per
/// `options.recurrence`. No reward structures are attached.
inline MarkovModel build_model(std::span<const Trace> traces, const BuildOptions& options = {}) {
  if (traces.empty()) throw Error(ErrorCode::EmptyCorpus, "corpus contains no cases");
  const auto thresholds = compute_thresholds(traces, options.cuts);

  std::vector<StateTuple> states{StateTuple::initial()};
  std::map<StateTuple, std::size_t> index;
  auto intern = [&](StateTuple s) {
    auto [it, inserted] = index.try_emplace(s, states.size());
    if (inserted) states.push_back(std::move(s));
    return it->second;
  };

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> counts;
  std::vector<std::size_t> openings;
  std::set<std::size_t> opening_set, closing_set;

  for (const auto& trace : traces) {
    const auto types = derive_utterance_types(trace, options.chief);
    std::vector<std::size_t> ids;
    ids.reserve(types.size());
    for (std::size_t i = 0; i < types.size(); ++i) {
      const auto& r = trace.records[i];
      const bool first = i == 0, last = i + 1 == types.size();
      if ((types[i].type == UtteranceType::Opening) != first || (types[i].type == UtteranceType::Closing) != last) {
        throw InputError(ErrorCode::TraceShape, r.line ? std::optional(r.line) : std::nullopt,
                         "case '" + trace.case_id + "' must have exactly one Opening (first) and one Closing (last)");
      }
      auto state = to_state(r, types[i], classify_record(r, thresholds));
      try {
        check_well_formed(state, options.chief);
      } catch (const Error& e) {
        throw InputError(ErrorCode::MalformedRow, r.line ? std::optional(r.line) : std::nullopt, e.what());
      }
      ids.push_back(intern(std::move(state)));
    }
    if (opening_set.insert(ids.front()).second) openings.push_back(ids.front());
    closing_set.insert(ids.back());
    for (std::size_t i = 0; i + 1 < ids.size(); ++i) ++counts[{ids[i], ids[i + 1]}];
  }

  const std::size_t initial = 0;
  const std::size_t final_index = states.size();
  states.push_back(StateTuple::final_state());

  std::map<std::size_t, std::size_t> row_total;
  for (const auto& [edge, c] : counts) row_total[edge.first] += c;

  std::vector<Transition> triplets;
  for (auto o : openings) triplets.push_back({initial, o, 1.0 / static_cast<double>(openings.size())});
  for (const auto& [edge, c] : counts) {
    triplets.push_back({edge.first, edge.second, static_cast<double>(c) / static_cast<double>(row_total[edge.first])});
  }
  for (auto c : closing_set) triplets.push_back({c, final_index, 1.0});
  const std::size_t loop = options.recurrence == RecurrenceMode::RestartLoop ? initial : final_index;
  triplets.push_back({final_index, loop, 1.0});

  const std::size_t n = states.size();
  return MarkovModel(std::move(states), SparseMatrix(n, std::move(triplets)), options.chief, options.recurrence);
}

/// Raw transition counts between utterance states, for inspection and tests.
inline std::map<std::pair<std::size_t, std::size_t>, std::size_t> transition_counts(const MarkovModel& model,
                                                                                   std::span<const Trace> traces,
                                                                                   const BuildOptions& options = {}) {
  std::map<StateTuple, std::size_t> index;
  for (std::size_t i = 0; i < model.size(); ++i) index.emplace(model.states()[i], i);
  const auto thresholds = compute_thresholds(traces, options.cuts);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> counts;
  for (const auto& trace : traces) {
    const auto types = derive_utterance_types(trace, options.chief);
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < types.size(); ++i) {
      ids.push_back(index.at(to_state(trace.records[i], types[i], classify_record(trace.records[i], thresholds))));
    }
    ++counts[{model.initial_index(), ids.front()}];
    for (std::size_t i = 0; i + 1 < ids.size(); ++i) ++counts[{ids[i], ids[i + 1]}];
    ++counts[{ids.back(), model.final_index()}];
  }
  return counts;
}

/// Appends the standard reward families:
///  n_step, r_<J>_intervening, r_JJ_intervening_<PP|RR>, r_<J>_intervening_<PP|RR>
///  and r_<TYPE> for each utterance type label. Indicator rewards are 1 where the
///  named condition holds, 0 elsewhere.
inline MarkovModel attach_standard_rewards(const MarkovModel& model) {
  const std::size_t n = model.size();
  std::vector<RewardStructure> out;
  out.emplace_back("n_step", std::vector<double>(n, 1.0));

  auto indicator = [&](auto pred) {
    std::vector<double> v(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& s = model.states()[i];
      if (!s.is_sentinel() && pred(s.fields())) v[i] = 1.0;
    }
    return v;
  };
  auto intervening = [](const Utterance& u) { return u.type == UtteranceType::Intervening; };

  for (auto side : {Side::PP, Side::RR}) {
    out.emplace_back("r_JJ_intervening_" + std::string(to_string(side)),
                     indicator([&](const Utterance& u) { return intervening(u) && u.detail.target == side; }));
  }
  for (int seat = 1; seat <= kBenchSize; ++seat) {
    const JusticeId j(seat);
    out.emplace_back("r_" + j.name() + "_intervening",
                     indicator([&](const Utterance& u) { return intervening(u) && u.speaker == j; }));
    for (auto side : {Side::PP, Side::RR}) {
      out.emplace_back("r_" + j.name() + "_intervening_" + std::string(to_string(side)),
                       indicator([&](const Utterance& u) {
                         return intervening(u) && u.speaker == j && u.detail.target == side;
                       }));
    }
  }
  for (auto t : kAllUtteranceTypes) {
    out.emplace_back("r_" + type_label(t), indicator([&](const Utterance& u) { return u.type == t; }));
  }
  return model.with_rewards(std::move(out));
}

}  // namespace courtmc::ingest
