#include <gtest/gtest.h>

#include <set>
#include <string>

#include "courtmc/core/labels.hpp"
#include "courtmc/core/model.hpp"
#include "courtmc/core/serialize.hpp"
#include "courtmc/core/state.hpp"

using namespace courtmc;

namespace {

const JusticeId kChief{1};

Utterance example_intervention() {
  Utterance u;
  u.speaker = JusticeId(6);
  u.side = Side::JJ;
  u.ac = Amicus::No;
  u.win = WinSide::Respondents;
  u.votes = *parse_votes("010010010");
  u.type = UtteranceType::Intervening;
  u.detail = {Side::PP, false, false, false};
  u.end = EndType::MS;
  u.sentiment = Sentiment::Neg;
  u.length = LengthClass::LoU;
  u.pause = PauseClass::MP;
  return u;
}

Utterance advocate(Side side, UtteranceType type = UtteranceType::Normal) {
  Utterance u;
  u.side = side;
  u.type = type;
  u.votes = *parse_votes("1111U0000");
  return u;
}

}  // namespace

TEST(Labels, JusticeInterventionStateCarriesEveryAttribute) {
  const auto labels = labels_of(StateTuple::utterance(example_intervention()), kChief);
  const std::set<std::string> expected{"J6",  "JJ",  "ACNO", "NFP", "(0,1,0,0,1,0,0,1,0)",
                                       "J10", "J21", "J30",  "J40", "J51",
                                       "J60", "J70", "J81",  "J90", "INTERVENING",
                                       "InterveningPP", "MS", "Neg", "LoU", "MP"};
  EXPECT_EQ(labels, expected);
}

TEST(Labels, SentinelsCarryOnlyTheirMarker) {
  EXPECT_EQ(labels_of(StateTuple::initial(), kChief), std::set<std::string>{"INITIAL"});
  EXPECT_EQ(labels_of(StateTuple::final_state(), kChief), std::set<std::string>{"FINAL"});
}

TEST(Labels, ChainedInterventionImpliesWholeHierarchy) {
  auto u = example_intervention();
  u.detail.chained = true;
  const auto labels = labels_of(StateTuple::utterance(u), kChief);
  for (const char* l : {"INTERVENING", "InterveningPP", "InterveningPPJJ"}) EXPECT_TRUE(labels.count(l)) << l;
  EXPECT_FALSE(labels.count("InterveningPPRE"));
  EXPECT_FALSE(labels.count("InterveningACPP"));
}

TEST(Labels, RebuttalAndAmicusTags) {
  auto u = example_intervention();
  u.detail = {Side::PP, true, true, false};
  auto labels = labels_of(StateTuple::utterance(u), kChief);
  EXPECT_TRUE(labels.count("InterveningPPRE"));
  EXPECT_TRUE(labels.count("InterveningACPP"));

  u.detail = {Side::RR, false, true, true};
  labels = labels_of(StateTuple::utterance(u), kChief);
  for (const char* l : {"INTERVENING", "InterveningRR", "InterveningACRR", "InterveningRRJJ"}) {
    EXPECT_TRUE(labels.count(l)) << l;
  }
  EXPECT_FALSE(labels.count("InterveningPP"));
}

TEST(Labels, UnknownVotesHaveNoPerJusticeLabel) {
  const auto labels = labels_of(StateTuple::utterance(advocate(Side::PP)), kChief);
  EXPECT_TRUE(labels.count("(1,1,1,1,IU,0,0,0,0)"));
  EXPECT_TRUE(labels.count("J41"));
  EXPECT_TRUE(labels.count("J60"));
  for (const auto& l : labels) EXPECT_EQ(l.rfind("J5", 0), std::string::npos) << l;
  EXPECT_TRUE(labels.count("NREQ"));
  EXPECT_TRUE(labels.count("PP"));
}

TEST(Labels, PartitionProperties) {
  std::vector<Utterance> us{example_intervention(), advocate(Side::PP), advocate(Side::RR, UtteranceType::Normal),
                            advocate(Side::PP, UtteranceType::Rebuttal), advocate(Side::SU)};
  Utterance chief;
  chief.speaker = kChief;
  chief.side = Side::JJ;
  for (auto t : {UtteranceType::Opening, UtteranceType::Closing, UtteranceType::Conclopening}) {
    chief.type = t;
    us.push_back(chief);
  }
  const std::set<std::string> types{"OPENING", "CLOSING", "CONCLOPENING", "NORMAL", "REBUTTAL", "INTERVENING"};
  for (const auto& u : us) {
    const auto labels = labels_of(StateTuple::utterance(u), kChief);
    auto count_in = [&](std::initializer_list<const char*> group) {
      int n = 0;
      for (auto g : group) n += static_cast<int>(labels.count(g));
      return n;
    };
    int type_count = 0;
    for (const auto& t : types) type_count += static_cast<int>(labels.count(t));
    EXPECT_EQ(type_count, 1);
    EXPECT_EQ(count_in({"Pos", "Neg", "Neu"}), 1);
    EXPECT_EQ(count_in({"MS", "SF", "LG", "NR"}), 1);
    EXPECT_EQ(count_in({"LoU", "SoU"}), 1);
    EXPECT_EQ(count_in({"MP", "LP"}), 1);
    EXPECT_EQ(count_in({"FP", "NFP"}), 1);
    EXPECT_EQ(count_in({"JJ", "PP", "RR", "SU"}), 1);
  }
}

TEST(Labels, MalformedStatesAreRejected) {
  auto u = example_intervention();
  u.side = Side::PP;  // justice speaker on an advocate side
  EXPECT_THROW(labels_of(StateTuple::utterance(u), kChief), Error);

  Utterance opening;
  opening.speaker = JusticeId(2);
  opening.type = UtteranceType::Opening;
  EXPECT_THROW(labels_of(StateTuple::utterance(opening), kChief), Error);

  auto rebuttal_rr = example_intervention();
  rebuttal_rr.detail = {Side::RR, true, false, false};
  EXPECT_THROW(labels_of(StateTuple::utterance(rebuttal_rr), kChief), Error);
}

TEST(Labels, RegistryMatchesLabelsOf) {
  std::vector<StateTuple> states{StateTuple::initial(), StateTuple::utterance(example_intervention()),
                                 StateTuple::utterance(advocate(Side::PP)), StateTuple::final_state()};
  PropositionRegistry reg(states, kChief);
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (const auto& l : labels_of(states[i], kChief)) EXPECT_TRUE(reg.sat(l).contains(i)) << l;
  }
  for (const auto& name : reg.names()) {
    reg.sat(name).for_each([&](std::size_t i) { EXPECT_TRUE(labels_of(states[i], kChief).count(name)); });
  }
  EXPECT_TRUE(reg.sat("nope").empty());
  EXPECT_FALSE(reg.has("nope"));
}

TEST(Stochastic, AcceptsProperRows) {
  SparseMatrix m(2, {{0, 0, 0.5}, {0, 1, 0.5}, {1, 1, 1.0}});
  EXPECT_TRUE(validate_stochastic(m).accepted());
}

TEST(Stochastic, ReportsRowDeviation) {
  SparseMatrix m(2, {{0, 0, 0.5}, {0, 1, 0.4}, {1, 1, 1.0}});
  const auto r = validate_stochastic(m);
  ASSERT_FALSE(r.accepted());
  ASSERT_EQ(r.issues.size(), 1u);
  EXPECT_EQ(r.issues[0].code, ErrorCode::RowNotStochastic);
  EXPECT_NEAR(r.row_deviation[0], 0.1, 1e-12);
}

TEST(Stochastic, ReportsDeadlockAndBadEntries) {
  SparseMatrix dead(2, {{0, 0, 1.0}});
  auto r = validate_stochastic(dead);
  ASSERT_FALSE(r.accepted());
  EXPECT_EQ(r.issues[0].code, ErrorCode::DeadlockState);
  EXPECT_EQ(r.issues[0].state, 1u);

  SparseMatrix neg(1, {{0, 0, 1.5}, {0, 0, -0.5}});
  EXPECT_TRUE(validate_stochastic(neg).accepted()) << "duplicate entries are summed";
  SparseMatrix big(2, {{0, 0, 1.5}, {0, 1, -0.5}, {1, 1, 1.0}});
  r = validate_stochastic(big);
  ASSERT_FALSE(r.accepted());
  EXPECT_EQ(r.issues[0].code, ErrorCode::NonpositiveProbability);
}

TEST(Chain, StateIndexProposition) {
  SparseMatrix m(3, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 2, 1.0}});
  std::vector<std::set<std::string>> labels(3);
  LabeledChain c(m, 0, PropositionRegistry(std::span<const std::set<std::string>>(labels)));
  EXPECT_EQ(c.state_index_prop(0).indices(), std::vector<std::size_t>{0});
  EXPECT_EQ(c.state_index_prop(2).indices(), std::vector<std::size_t>{2});
  try {
    c.state_index_prop(3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IndexOutOfRange);
  }
  EXPECT_THROW(c.state_index_prop(-1), Error);
}

TEST(Chain, RejectsNonStochasticMatrix) {
  std::vector<std::set<std::string>> labels(2);
  try {
    LabeledChain c(SparseMatrix(2, {{0, 1, 0.9}, {1, 1, 1.0}}), 0,
                   PropositionRegistry(std::span<const std::set<std::string>>(labels)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RowNotStochastic);
  }
}

TEST(Rewards, RejectNegativeValues) {
  EXPECT_THROW(RewardStructure("bad", {1.0, -0.5}), Error);
  EXPECT_NO_THROW(RewardStructure("ok", {0.0, 2.5}));
}

namespace {

MarkovModel small_model(RecurrenceMode mode) {
  std::vector<StateTuple> states{StateTuple::initial()};
  Utterance open;
  open.speaker = kChief;
  open.type = UtteranceType::Opening;
  open.votes = *parse_votes("01U010010");
  states.push_back(StateTuple::utterance(open));
  auto pp = advocate(Side::PP);
  pp.votes = open.votes;
  states.push_back(StateTuple::utterance(pp));
  Utterance close = open;
  close.type = UtteranceType::Closing;
  states.push_back(StateTuple::utterance(close));
  auto iv = example_intervention();
  iv.votes = open.votes;
  iv.detail = {Side::PP, false, true, true};
  states.push_back(StateTuple::utterance(iv));
  states.push_back(StateTuple::final_state());
  const std::size_t loop = mode == RecurrenceMode::RestartLoop ? 0 : 5;
  SparseMatrix m(6, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 4, 1.0 / 3}, {2, 3, 2.0 / 3}, {4, 2, 1.0}, {3, 5, 1.0},
                     {5, loop, 1.0}});
  return MarkovModel(states, m, kChief, mode, {RewardStructure("n_step", std::vector<double>(6, 1.0))});
}

}  // namespace

TEST(Model, SentinelsAndRecurrence) {
  const auto m = small_model(RecurrenceMode::RestartLoop);
  EXPECT_EQ(m.initial_index(), 0u);
  EXPECT_EQ(m.final_index(), 5u);
  EXPECT_EQ(m.labels().sat("FINAL").indices(), std::vector<std::size_t>{5});
  EXPECT_DOUBLE_EQ(m.transitions().at(5, 0), 1.0);

  const auto s = small_model(RecurrenceMode::FinalSelfLoop);
  EXPECT_DOUBLE_EQ(s.transitions().at(5, 5), 1.0);
}

TEST(Model, RejectsDuplicateTuplesAndWrongRecurrence) {
  auto m = small_model(RecurrenceMode::RestartLoop);
  std::vector<StateTuple> dup(m.states().begin(), m.states().end());
  dup[4] = dup[2];
  EXPECT_THROW(MarkovModel(dup, m.transitions(), kChief, RecurrenceMode::RestartLoop), Error);
  std::vector<StateTuple> same(m.states().begin(), m.states().end());
  EXPECT_THROW(MarkovModel(same, m.transitions(), kChief, RecurrenceMode::FinalSelfLoop), Error);
}

TEST(Serialize, RoundTripIsBitFaithful) {
  for (auto mode : {RecurrenceMode::RestartLoop, RecurrenceMode::FinalSelfLoop}) {
    const auto m = small_model(mode);
    const auto text = model_to_json(m);
    const auto back = model_from_json(text);
    EXPECT_EQ(model_to_json(back), text);
    ASSERT_EQ(back.size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i) EXPECT_EQ(back.states()[i], m.states()[i]);
    const auto a = m.transitions().triplets(), b = back.transitions().triplets();
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].src, b[i].src);
      EXPECT_EQ(a[i].dst, b[i].dst);
      EXPECT_EQ(a[i].p, b[i].p);  // exact
    }
    EXPECT_EQ(back.recurrence(), mode);
    EXPECT_NE(back.find_reward("n_step"), nullptr);
  }
}

TEST(Serialize, MalformedDocumentsAreRejected) {
  try {
    model_from_json("{\"meta\":{}}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedModel);
  }
  EXPECT_THROW(model_from_json("not json"), Error);
  try {
    load_model("/nonexistent/model.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}

TEST(StateText, VotesAndDescriptions) {
  EXPECT_FALSE(parse_votes("01001001").has_value());
  EXPECT_FALSE(parse_votes("01001001X").has_value());
  const auto v = *parse_votes("01U010010");
  EXPECT_EQ(compact_votes(v), "01U010010");
  EXPECT_EQ(vote_vector_label(v), "(0,1,IU,0,1,0,0,1,0)");
  EXPECT_EQ(describe(StateTuple::utterance(example_intervention())),
            "(J6,JJ,ACNO,0,(0,1,0,0,1,0,0,1,0),InterveningPP,MS,Neg,LoU,MP)");
  EXPECT_EQ(describe(StateTuple::initial()), "INITIAL");
}
