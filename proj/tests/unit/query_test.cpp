#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "courtmc/query/parser.hpp"
#include "courtmc/query/printer.hpp"
#include "courtmc/query/template.hpp"
#include "support/ast_gen.hpp"

using namespace courtmc;
using namespace courtmc::query;

namespace {

struct Failure {
  ErrorCode code;
  std::size_t position;
};

Failure parse_failure(const std::string& text) {
  try {
    parse_query(text);
  } catch (const SyntaxError& e) {
    return {e.code(), e.position()};
  }
  ADD_FAILURE() << "parsed without error: " << text;
  return {ErrorCode::ScaleExceeded, 0};
}

}  // namespace

TEST(Parse, NextAndFilter) {
  EXPECT_EQ(parse_query(R"(P=?[X "PP"])"), prob(ProbBound::query(), next(prop("PP"))));
  EXPECT_EQ(parse_query(R"(filter(avg,P=?[X ("PP")],"RR"))"),
            filter(FilterOp::Avg, prob(ProbBound::query(), next(prop("PP"))), prop("RR")));
  EXPECT_EQ(parse_query(R"(P=?[(X"J10")])"), prob(ProbBound::query(), next(prop("J10"))));
}

TEST(Parse, UntilFormsAndNormalisation) {
  EXPECT_EQ(parse_query(R"(P=?(!("PP")U("CLOSING")))"),
            prob(ProbBound::query(), until(neg(prop("PP")), prop("CLOSING"))));
  EXPECT_EQ(parse_query(R"(P>=0.5[F<=3 "a"])"), prob(ProbBound::at_least(0.5), bounded_until(tt(), prop("a"), 3)));
  EXPECT_EQ(parse_query(R"(P<0.25 [ "a" U<=7 "b" ])"),
            prob(ProbBound::at_most(0.25, true), bounded_until(prop("a"), prop("b"), 7)));
  EXPECT_EQ(parse_query(R"(P=?[F "FINAL"])"), prob(ProbBound::query(), eventually(prop("FINAL"))));
  EXPECT_EQ(parse_query(R"(P=?[(X("FP"))U("FP")])"),
            prob(ProbBound::query(), Until{at_next(prop("FP")), at_state(prop("FP"))}));
}

TEST(Parse, RewardPaths) {
  EXPECT_EQ(parse_query(R"(R{"n_step"}=?[F "CLOSING"])"), reward("n_step", Reach{prop("CLOSING")}));
  EXPECT_EQ(parse_query(R"(R{"r"}=?[C<=50])"), reward("r", Cumulative{50}));
  EXPECT_EQ(parse_query(R"(R{"n_step"}=?[(X("JJ"))U(X(!("JJ")))])"),
            reward("n_step", RewardUntil{at_next(prop("JJ")), at_next(neg(prop("JJ")))}));
  EXPECT_EQ(parse_query(R"(R{"n_step"}=? [ ("JJ"&"INTERVENING") U !("JJ") ])"),
            reward("n_step", RewardUntil{at_state(conj(prop("JJ"), prop("INTERVENING"))), at_state(neg(prop("JJ")))}));
}

TEST(Parse, SteadyStateAndPrecedence) {
  EXPECT_EQ(parse_query(R"(S=?["Pos"])"), steady(prop("Pos")));
  EXPECT_EQ(parse_query(R"(!"a" & "b" | "c")"), disj(conj(neg(prop("a")), prop("b")), prop("c")));
  EXPECT_EQ(parse_query(R"("a" | "b" & "c")"), disj(prop("a"), conj(prop("b"), prop("c"))));
  EXPECT_EQ(parse_query("x = 12"), index_eq(12));
  EXPECT_EQ(parse_query("false"), neg(tt()));
  EXPECT_EQ(parse_query(R"(filter(state, S=?["a"], x=3))"), filter(FilterOp::State, steady(prop("a")), index_eq(3)));
}

TEST(Parse, EscapedNames) {
  EXPECT_EQ(parse_query(R"("a \"quoted\" name")"), prop("a \"quoted\" name"));
  EXPECT_EQ(parse_query(R"q("(0,1,IU,0,1,0,0,1,0)")q"), prop("(0,1,IU,0,1,0,0,1,0)"));
}

TEST(Parse, SyntaxErrorsReportPositions) {
  auto f = parse_failure(R"(P=?[X "PP")");
  EXPECT_EQ(f.code, ErrorCode::SyntaxError);
  EXPECT_EQ(f.position, 10u);

  f = parse_failure(R"("a" & )");
  EXPECT_EQ(f.code, ErrorCode::SyntaxError);
  EXPECT_EQ(f.position, 6u);

  f = parse_failure(R"("unterminated)");
  EXPECT_EQ(f.code, ErrorCode::SyntaxError);
  EXPECT_EQ(f.position, 0u);

  f = parse_failure(R"(P=?[X "a"] "b")");
  EXPECT_EQ(f.code, ErrorCode::SyntaxError);
  EXPECT_EQ(f.position, 11u);

  EXPECT_EQ(parse_failure(R"(P>=1.5[X "a"])").code, ErrorCode::SyntaxError);
  EXPECT_EQ(parse_failure(R"(R{"r"}=?[C<=0])").code, ErrorCode::SyntaxError);
  EXPECT_EQ(parse_failure(R"(filter(median,"a","b"))").code, ErrorCode::SyntaxError);
  EXPECT_EQ(parse_failure("x=-1").code, ErrorCode::SyntaxError);
  EXPECT_EQ(parse_failure("#").code, ErrorCode::SyntaxError);
  EXPECT_EQ(parse_failure("").code, ErrorCode::SyntaxError);
}

TEST(Parse, UnsupportedConstructs) {
  EXPECT_EQ(parse_failure(R"(R{"r"}=?[I=5])").code, ErrorCode::UnknownConstruct);
  EXPECT_EQ(parse_failure(R"("a" & S=?["b"])").code, ErrorCode::UnknownConstruct);
  EXPECT_EQ(parse_failure(R"(P=?[(X "a") U<=3 "b"])").code, ErrorCode::UnknownConstruct);
}

TEST(Print, CanonicalForms) {
  EXPECT_EQ(pretty_print(parse_query(R"(filter( avg , P=? [ X ("PP") ] , "RR" ))")), R"(filter(avg,P=?[X "PP"],"RR"))");
  EXPECT_EQ(pretty_print(parse_query(R"(("a"|"b")&!("c"&"d"))")), R"(("a"|"b")&!("c"&"d"))");
  EXPECT_EQ(pretty_print(parse_query(R"(P=?[true U "a"])")), R"(P=?[F "a"])");
  EXPECT_EQ(pretty_print(parse_query(R"(P>0.1[(X "a") U "b"])")), R"(P>0.1[(X "a") U "b"])");
  EXPECT_EQ(pretty_print(parse_query(R"(R{"r"}=?[C<=4])")), R"(R{"r"}=?[C<=4])");
}

TEST(Print, RandomRoundTrip) {
  astgen::Generator gen(20240601);
  for (int i = 0; i < 1000; ++i) {
    const auto f = gen.query();
    const auto text = pretty_print(f);
    StateFormula back;
    ASSERT_NO_THROW(back = parse_query(text)) << text;
    EXPECT_EQ(back, f) << text;
    EXPECT_EQ(pretty_print(back), text);
  }
}

TEST(Fixture, EveryCollectedQueryParses) {
  std::ifstream in(std::string(COURTMC_DATA_DIR) + "/queries/reference_queries.json");
  ASSERT_TRUE(in);
  const auto doc = nlohmann::json::parse(in);
  std::size_t n = 0;
  for (const auto& q : doc.at("queries")) {
    auto text = q.at("query").get<std::string>();
    if (text.find("@J") != std::string::npos) text = expand_template(text, "J", 3);
    StateFormula f;
    EXPECT_NO_THROW(f = parse_query(text)) << q.at("id") << ": " << text;
    EXPECT_EQ(parse_query(pretty_print(f)), f) << text;
    ++n;
  }
  EXPECT_EQ(n, 39u);
}

TEST(Template, ExpandsEveryToken) {
  EXPECT_EQ(expand_template("filter(max,P=?[X(x=@J)],(x=@J))", "J", 5), "filter(max,P=?[X(x=5)],(x=5))");
  EXPECT_EQ(expand_template("x=@k", "k", 120), "x=120");
  EXPECT_EQ(expand_template("x=@J|x=@JJ", "J", 1), "x=1|x=@JJ");
  try {
    expand_template("x=1", "J", 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PlaceholderMissing);
  }
}
