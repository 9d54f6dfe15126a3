#pragma once

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "courtmc/cli/format.hpp"
#include "courtmc/core/error.hpp"
#include "courtmc/core/model.hpp"
#include "courtmc/engine/checker.hpp"
#include "courtmc/query/parser.hpp"

namespace courtmc::cli {

struct SuiteEntry {
  std::string id;
  std::string query;
  std::optional<double> expected;
  double tolerance = 1e-9;
  std::string note;
  query::StateFormula formula;
};

/// Reads a suite document:
///   {"entries": [{"id": "...", "query": "...", "expected": 0.0 | "inf",
///                 "tolerance": 1e-9, "note": "..."}]}
/// Every query is parsed up front; ids must be unique.
inline std::vector<SuiteEntry> parse_suite(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedRow, std::string("suite is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
    throw Error(ErrorCode::MalformedRow, "suite needs an 'entries' array");
  }
  std::vector<SuiteEntry> out;
  std::set<std::string> ids;
  for (const auto& e : doc["entries"]) {
    if (!e.is_object() || !e.contains("id") || !e.contains("query") || !e["id"].is_string() || !e["query"].is_string()) {
      throw Error(ErrorCode::MalformedRow, "suite entry needs string 'id' and 'query'");
    }
    SuiteEntry s;
    s.id = e["id"];
    s.query = e["query"];
    if (!ids.insert(s.id).second) throw Error(ErrorCode::MalformedRow, "duplicate suite id '" + s.id + "'");
    if (e.contains("expected")) {
      const auto& x = e["expected"];
      if (x.is_number()) {
        s.expected = x.get<double>();
      } else if (x == "inf") {
        s.expected = std::numeric_limits<double>::infinity();
      } else {
        throw Error(ErrorCode::MalformedRow, "entry '" + s.id + "': expected must be a number or \"inf\"");
      }
    }
    if (e.contains("tolerance")) s.tolerance = e["tolerance"].get<double>();
    if (e.contains("note")) s.note = e["note"].get<std::string>();
    try {
      s.formula = query::parse_query(s.query);
    } catch (const Error& err) {
      throw Error(err.code(), "entry '" + s.id + "': " + err.what());
    }
    out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<SuiteEntry> load_suite(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open suite file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_suite(ss.str());
}

enum class EntryStatus { Pass, Fail, Info, Error };

inline const char* to_string(EntryStatus s) {
  switch (s) {
    case EntryStatus::Pass: return "pass";
    case EntryStatus::Fail: return "fail";
    case EntryStatus::Info: return "info";
    case EntryStatus::Error: return "error";
  }
  return "?";
}

struct EntryResult {
  const SuiteEntry* entry;
  EntryStatus status;
  double value = 0.0;
  std::string error;
};

struct SuiteReport {
  std::vector<EntryResult> results;
  std::vector<std::string> warnings;

  std::size_t count(EntryStatus s) const {
    std::size_t n = 0;
    for (const auto& r : results) n += r.status == s;
    return n;
  }
  /// 0 all expectations met, 1 some failed, 3 some entry could not be evaluated.
  int exit_code() const {
    if (count(EntryStatus::Error)) return 3;
    if (count(EntryStatus::Fail)) return 1;
    return 0;
  }
};

inline bool within(double value, double expected, double tol) {
  if (std::isinf(expected) || std::isinf(value)) return value == expected;
  return std::abs(value - expected) <= tol;
}

/// Evaluates entries in order with one shared checker.
inline SuiteReport run_suite(const MarkovModel& model, const std::vector<SuiteEntry>& entries) {
  engine::Checker checker(model.chain());
  SuiteReport report;
  for (const auto& e : entries) {
    EntryResult r{&e, EntryStatus::Info, 0.0, {}};
    try {
      r.value = headline(checker.evaluate(e.formula));
      if (e.expected) r.status = within(r.value, *e.expected, e.tolerance) ? EntryStatus::Pass : EntryStatus::Fail;
    } catch (const Error& err) {
      r.status = EntryStatus::Error;
      r.error = err.what();
    }
    report.results.push_back(std::move(r));
  }
  report.warnings = checker.warnings();
  return report;
}

inline nlohmann::ordered_json suite_report_json(const SuiteReport& report, const std::string& model_path,
                                                const std::string& suite_path, std::optional<std::string> timestamp) {
  nlohmann::ordered_json j;
  j["model"] = model_path;
  j["suite"] = suite_path;
  if (timestamp) j["timestamp"] = *timestamp;
  auto& arr = j["entries"] = nlohmann::ordered_json::array();
  for (const auto& r : report.results) {
    nlohmann::ordered_json e;
    e["id"] = r.entry->id;
    e["query"] = r.entry->query;
    e["status"] = to_string(r.status);
    if (r.status == EntryStatus::Error) {
      e["error"] = r.error;
    } else {
      e["value"] = json_number(r.value);
    }
    if (r.entry->expected) {
      e["expected"] = json_number(*r.entry->expected);
      e["tolerance"] = r.entry->tolerance;
    }
    arr.push_back(std::move(e));
  }
  j["warnings"] = report.warnings;
  j["summary"] = {{"total", report.results.size()},
                  {"passed", report.count(EntryStatus::Pass)},
                  {"failed", report.count(EntryStatus::Fail)},
                  {"errors", report.count(EntryStatus::Error)},
                  {"info", report.count(EntryStatus::Info)}};
  return j;
}

}  // namespace courtmc::cli
