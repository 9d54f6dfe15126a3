#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "courtmc/core/state.hpp"
#include "courtmc/core/state_set.hpp"

namespace courtmc {

inline std::string type_label(UtteranceType t) {
  switch (t) {
    case UtteranceType::Opening: return "OPENING";
    case UtteranceType::Closing: return "CLOSING";
    case UtteranceType::Conclopening: return "CONCLOPENING";
    case UtteranceType::Normal: return "NORMAL";
    case UtteranceType::Rebuttal: return "REBUTTAL";
    case UtteranceType::Intervening: return "INTERVENING";
  }
  return "?";
}

inline constexpr UtteranceType kAllUtteranceTypes[] = {
    UtteranceType::Opening, UtteranceType::Closing,  UtteranceType::Conclopening,
    UtteranceType::Normal,  UtteranceType::Rebuttal, UtteranceType::Intervening};

/// "J30" / "J31": justice 3 voted for the respondents / petitioners.
inline std::string vote_label(JusticeId j, Vote v) {
  return j.name() + (v == Vote::Petitioners ? "1" : "0");
}

/// Atomic propositions true in `state`. The intervening tags form a hierarchy:
/// every specific tag also implies "Intervening<side>" and "INTERVENING".
inline std::set<std::string> labels_of(const StateTuple& state, JusticeId chief) {
  check_well_formed(state, chief);
  if (state.kind() == StateKind::Initial) return {"INITIAL"};
  if (state.kind() == StateKind::Final) return {"FINAL"};

  const auto& u = state.fields();
  std::set<std::string> out;
  out.insert(speaker_label(u));
  out.emplace(to_string(u.side));
  out.emplace(to_string(u.ac));
  out.insert(u.win == WinSide::Petitioners ? "FP" : "NFP");
  out.insert(vote_vector_label(u.votes));
  for (int i = 0; i < kBenchSize; ++i) {
    if (u.votes[i] != Vote::Unknown) out.insert(vote_label(JusticeId(i + 1), u.votes[i]));
  }
  out.insert(type_label(u.type));
  if (u.type == UtteranceType::Intervening) {
    const auto side = std::string(to_string(u.detail.target));
    out.insert("Intervening" + side);
    if (u.detail.during_rebuttal) out.insert("Intervening" + side + "RE");
    if (u.detail.amicus_target) out.insert("InterveningAC" + side);
    if (u.detail.chained) out.insert("Intervening" + side + "JJ");
  }
  out.emplace(to_string(u.end));
  out.emplace(to_string(u.sentiment));
  out.emplace(to_string(u.length));
  out.emplace(to_string(u.pause));
  return out;
}

/// Proposition name -> satisfying states. Immutable once built.
class PropositionRegistry {
 public:
  PropositionRegistry() = default;

  PropositionRegistry(std::span<const StateTuple> states, JusticeId chief) : size_(states.size()) {
    for (std::size_t i = 0; i < states.size(); ++i) {
      for (const auto& name : labels_of(states[i], chief)) {
        auto [it, inserted] = sets_.try_emplace(name, size_);
        it->second.insert(i);
      }
    }
  }

  /// From explicit per-state label sets (generic chains, tests).
  explicit PropositionRegistry(std::span<const std::set<std::string>> label_sets) : size_(label_sets.size()) {
    for (std::size_t i = 0; i < label_sets.size(); ++i) {
      for (const auto& name : label_sets[i]) {
        auto [it, inserted] = sets_.try_emplace(name, size_);
        it->second.insert(i);
      }
    }
  }

  std::size_t state_count() const noexcept { return size_; }
  bool has(const std::string& name) const { return sets_.contains(name); }

  /// Satisfying set, or the empty set when `name` labels no state.
  StateSet sat(const std::string& name) const {
    auto it = sets_.find(name);
    return it == sets_.end() ? StateSet(size_) : it->second;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : sets_) out.push_back(name);
    return out;
  }

 private:
  std::size_t size_ = 0;
  std::map<std::string, StateSet> sets_;
};

}  // namespace courtmc
