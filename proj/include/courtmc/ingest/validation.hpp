#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "courtmc/core/error.hpp"
#include "courtmc/core/model.hpp"
#include "courtmc/engine/checker.hpp"
#include "courtmc/query/parser.hpp"
#include "courtmc/query/template.hpp"

namespace courtmc::ingest {

struct ValidationCheck {
  std::string id;
  std::string query;  // representative query text
  double expected;
  double value;
  bool passed;
  std::string detail;  // error text or the offending instance
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  }
};

/// Construction sanity checks that hold on every model built from a well-formed
/// corpus, regardless of recurrence mode:
///  - advocates of opposite sides never follow each other directly (both directions);
///  - no state is both NREQ and JJ, and an advocate state is reached with certainty;
///  - no state has a self-loop;
///  - no path reaches CLOSING while avoiding either side;
///  - no justice's vote flips along a transition.
inline ValidationReport structural_validation(const MarkovModel& model) {
  engine::Checker checker(model.chain());
  ValidationReport report;

  auto run = [&](std::string id, std::string text, double expected) {
    ValidationCheck c{std::move(id), text, expected, 0.0, false, {}};
    try {
      c.value = headline(checker.evaluate(query::parse_query(text)));
      c.passed = c.value == expected;
    } catch (const Error& e) {
      c.detail = e.what();
    }
    report.checks.push_back(std::move(c));
  };

  run("b_pp_after_rr", R"(filter(avg,P=?[X ("PP")],"RR"))", 0.0);
  run("b_rr_after_pp", R"(filter(avg,P=?[X ("RR")],"PP"))", 0.0);
  run("c_nreq_justice", R"(filter(avg,P=?[F ("NREQ"&"JJ")],"INITIAL"))", 0.0);
  run("c_nreq_advocate", R"(filter(avg,P=?[F ("NREQ"&("PP"|"RR"))],"INITIAL"))", 1.0);

  {
    const std::string tmpl = "filter(max,P=?[X(x=@J)],(x=@J))";
    ValidationCheck c{"d_self_loop", tmpl, 0.0, 0.0, true, {}};
    try {
      for (std::size_t j = 0; j < model.size(); ++j) {
        if (model.states()[j].is_sentinel()) continue;
        const auto text = query::expand_template(tmpl, "J", static_cast<long long>(j));
        const double v = headline(checker.evaluate(query::parse_query(text)));
        if (v > c.value) {
          c.value = v;
          c.detail = "state " + std::to_string(j);
        }
      }
      c.passed = c.value == 0.0;
    } catch (const Error& e) {
      c.passed = false;
      c.detail = e.what();
    }
    report.checks.push_back(std::move(c));
  }

  run("e_no_pp", R"(P=?[(!"PP")U("CLOSING")])", 0.0);
  run("e_no_rr", R"(P=?[(!"RR")U("CLOSING")])", 0.0);

  {
    ValidationCheck c{"g_vote_flip", R"(filter(avg,P=?[(X"Jk0")],"Jk1"))", 0.0, 0.0, true, {}};
    try {
      for (int seat = 1; seat <= kBenchSize; ++seat) {
        const auto name = JusticeId(seat).name();
        for (auto [to, from] : {std::pair{"0", "1"}, std::pair{"1", "0"}}) {
          if (model.labels().sat(name + from).empty()) continue;
          const auto text = "filter(avg,P=?[(X\"" + name + to + "\")],\"" + name + from + "\")";
          const double v = headline(checker.evaluate(query::parse_query(text)));
          if (v > c.value) {
            c.value = v;
            c.detail = text;
          }
        }
      }
      c.passed = c.value == 0.0;
    } catch (const Error& e) {
      c.passed = false;
      c.detail = e.what();
    }
    report.checks.push_back(std::move(c));
  }
  return report;
}

}  // namespace courtmc::ingest
