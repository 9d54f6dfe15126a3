#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "courtmc/core/error.hpp"
#include "courtmc/core/model.hpp"
#include "courtmc/core/state.hpp"

// Model file layout:
//   { "meta": {"chief": "J1", "recurrence_mode": "restart"},
//     "states": [ {"kind": "initial"}, {"kind": "utterance", ...fields}, ..., {"kind": "final"} ],
//     "transitions": [ {"src": 0, "dst": 1, "p": 0.5}, ... ],
//     "rewards": { "n_step": [1, 1, ...], ... } }
// Doubles are written in shortest round-trip form, so load(save(m)) is bit-exact.

namespace courtmc {

namespace detail {

inline nlohmann::ordered_json state_to_json(const StateTuple& s) {
  nlohmann::ordered_json j;
  switch (s.kind()) {
    case StateKind::Initial: j["kind"] = "initial"; return j;
    case StateKind::Final: j["kind"] = "final"; return j;
    case StateKind::Utterance: j["kind"] = "utterance"; break;
  }
  const auto& u = s.fields();
  j["speaker"] = speaker_label(u);
  j["side"] = to_string(u.side);
  j["ac"] = to_string(u.ac);
  j["win_side"] = u.win == WinSide::Petitioners ? 1 : 0;
  j["votes"] = compact_votes(u.votes);
  j["type"] = to_string(u.type);
  if (u.type == UtteranceType::Intervening) {
    j["target"] = to_string(u.detail.target);
    j["during_rebuttal"] = u.detail.during_rebuttal;
    j["amicus_target"] = u.detail.amicus_target;
    j["chained"] = u.detail.chained;
  }
  j["end_type"] = to_string(u.end);
  j["sentiment"] = to_string(u.sentiment);
  j["length"] = to_string(u.length);
  j["pause"] = to_string(u.pause);
  return j;
}

template <typename T>
T require(std::optional<T> v, const std::string& field, const nlohmann::json& j) {
  if (!v) throw Error(ErrorCode::MalformedModel, "bad value for '" + field + "' in " + j.dump());
  return *v;
}

inline StateTuple state_from_json(const nlohmann::json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "initial") return StateTuple::initial();
  if (kind == "final") return StateTuple::final_state();
  if (kind != "utterance") throw Error(ErrorCode::MalformedModel, "unknown state kind '" + kind + "'");

  Utterance u;
  const auto speaker = j.at("speaker").get<std::string>();
  if (speaker != "NREQ") u.speaker = require(JusticeId::parse(speaker), "speaker", j);
  u.side = require(parse_side(j.at("side").get<std::string>()), "side", j);
  u.ac = require(parse_amicus(j.at("ac").get<std::string>()), "ac", j);
  u.win = require(parse_win_side(std::to_string(j.at("win_side").get<int>())), "win_side", j);
  u.votes = require(parse_votes(j.at("votes").get<std::string>()), "votes", j);
  u.type = require(parse_utterance_type(j.at("type").get<std::string>()), "type", j);
  if (u.type == UtteranceType::Intervening) {
    u.detail.target = require(parse_side(j.at("target").get<std::string>()), "target", j);
    u.detail.during_rebuttal = j.at("during_rebuttal").get<bool>();
    u.detail.amicus_target = j.at("amicus_target").get<bool>();
    u.detail.chained = j.at("chained").get<bool>();
  }
  u.end = require(parse_end_type(j.at("end_type").get<std::string>()), "end_type", j);
  u.sentiment = require(parse_sentiment(j.at("sentiment").get<std::string>()), "sentiment", j);
  u.length = require(parse_length_class(j.at("length").get<std::string>()), "length", j);
  u.pause = require(parse_pause_class(j.at("pause").get<std::string>()), "pause", j);
  return StateTuple::utterance(u);
}

}  // namespace detail

inline std::string model_to_json(const MarkovModel& model) {
  nlohmann::ordered_json doc;
  doc["meta"] = {{"chief", model.chief().name()}, {"recurrence_mode", to_string(model.recurrence())}};
  auto& states = doc["states"] = nlohmann::ordered_json::array();
  for (const auto& s : model.states()) states.push_back(detail::state_to_json(s));
  auto& transitions = doc["transitions"] = nlohmann::ordered_json::array();
  for (const auto& t : model.transitions().triplets()) {
    transitions.push_back({{"src", t.src}, {"dst", t.dst}, {"p", t.p}});
  }
  auto& rewards = doc["rewards"] = nlohmann::ordered_json::object();
  for (const auto& [name, r] : model.rewards()) {
    rewards[name] = std::vector<double>(r.values().begin(), r.values().end());
  }
  return doc.dump(1) + "\n";
}

inline MarkovModel model_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedModel, std::string("model is not valid JSON: ") + e.what());
  }
  try {
    const auto& meta = doc.at("meta");
    const auto chief = detail::require(JusticeId::parse(meta.at("chief").get<std::string>()), "chief", meta);
    const auto recurrence =
        detail::require(parse_recurrence_mode(meta.at("recurrence_mode").get<std::string>()), "recurrence_mode", meta);

    std::vector<StateTuple> states;
    for (const auto& s : doc.at("states")) states.push_back(detail::state_from_json(s));

    std::vector<Transition> triplets;
    for (const auto& t : doc.at("transitions")) {
      triplets.push_back({t.at("src").get<std::size_t>(), t.at("dst").get<std::size_t>(), t.at("p").get<double>()});
    }

    std::vector<RewardStructure> rewards;
    if (doc.contains("rewards")) {
      for (const auto& [name, values] : doc.at("rewards").items()) {
        rewards.emplace_back(name, values.get<std::vector<double>>());
      }
    }
    SparseMatrix matrix(states.size(), std::move(triplets));
    return MarkovModel(std::move(states), std::move(matrix), chief, recurrence, std::move(rewards));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedModel, std::string("model JSON has an unexpected shape: ") + e.what());
  }
}

inline void save_model(const MarkovModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out << model_to_json(model);
  if (!out) throw Error(ErrorCode::Io, "failed writing '" + path + "'");
}

inline MarkovModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace courtmc
