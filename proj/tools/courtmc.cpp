// courtmc: build interaction models from annotated traces and check queries against them.

#include <chrono>
#include <ctime>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "courtmc/cli/format.hpp"
#include "courtmc/cli/suite.hpp"
#include "courtmc/courtmc.hpp"

namespace {

using namespace courtmc;
using cli::format_full;
using cli::format_short;
using cli::json_number;
using Json = nlohmann::ordered_json;

enum Exit { kOk = 0, kFailures = 1, kInputError = 2, kEvalError = 3 };

int report_error(const Error& e, int code) {
  std::cerr << "error: " << e.what() << "\n";
  return code;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

std::string utc_timestamp() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<MarkovModel> load(const std::string& path, int& code) {
  try {
    return load_model(path);
  } catch (const Error& e) {
    code = report_error(e, kInputError);
    return std::nullopt;
  }
}

// ---- build -----------------------------------------------------------------

struct BuildArgs {
  std::string corpus, out, chief = "J1", recurrence = "restart";
  double neg_max = -0.05, pos_min = 0.05;
};

int cmd_build(const BuildArgs& a) {
  try {
    ingest::BuildOptions opt;
    const auto chief = JusticeId::parse(a.chief);
    if (!chief) throw Error(ErrorCode::MalformedRow, "--chief must be J1..J9");
    const auto mode = parse_recurrence_mode(a.recurrence);
    if (!mode) throw Error(ErrorCode::MalformedRow, "--recurrence must be 'restart' or 'selfloop'");
    if (!(a.neg_max < a.pos_min)) throw Error(ErrorCode::MalformedRow, "--neg-max must be below --pos-min");
    opt.chief = *chief;
    opt.recurrence = *mode;
    opt.cuts = {a.neg_max, a.pos_min};

    const auto traces = ingest::parse_corpus(a.corpus);
    const auto model = ingest::attach_standard_rewards(ingest::build_model(traces, opt));
    save_model(model, a.out);
    std::cout << "states=" << model.size() << " transitions=" << model.transitions().nonzeros()
              << " cases=" << traces.size() << "\n";
    return kOk;
  } catch (const Error& e) {
    return report_error(e, kInputError);
  }
}

// ---- validate --------------------------------------------------------------

int cmd_validate(const std::string& model_path, const std::string& format) {
  int code = kOk;
  auto model = load(model_path, code);
  if (!model) return code;
  const auto report = ingest::structural_validation(*model);
  if (format == "json") {
    Json j;
    j["model"] = model_path;
    auto& arr = j["checks"] = Json::array();
    for (const auto& c : report.checks) {
      arr.push_back({{"id", c.id},
                     {"query", c.query},
                     {"expected", json_number(c.expected)},
                     {"value", json_number(c.value)},
                     {"status", c.passed ? "pass" : "fail"},
                     {"detail", c.detail}});
    }
    j["passed"] = report.all_passed();
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& c : report.checks) {
      std::cout << (c.passed ? "PASS " : "FAIL ") << c.id << "  value=" << format_short(c.value)
                << " expected=" << format_short(c.expected);
      if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
      std::cout << "\n";
    }
    std::cout << (report.all_passed() ? "all checks passed" : "validation failed") << "\n";
  }
  return report.all_passed() ? kOk : kFailures;
}

// ---- check -----------------------------------------------------------------

int cmd_check(const std::string& model_path, const std::string& text, const std::string& format, bool vector) {
  int code = kOk;
  auto model = load(model_path, code);
  if (!model) return code;
  try {
    const auto f = query::parse_query(text);
    engine::Checker checker(model->chain());
    const auto result = checker.evaluate(f);
    print_warnings(checker.warnings());

    const char* kind = std::holds_alternative<ScalarResult>(result)   ? "scalar"
                       : std::holds_alternative<VectorResult>(result) ? "vector"
                                                                      : "boolean";
    std::vector<double> values;
    if (const auto* v = std::get_if<VectorResult>(&result)) values = v->values;
    if (const auto* b = std::get_if<BooleanResult>(&result)) {
      values.assign(model->size(), 0.0);
      b->states.for_each([&](std::size_t s) { values[s] = 1.0; });
    }
    const bool show_vector = vector && !values.empty();
    const bool boolean = std::holds_alternative<BooleanResult>(result);
    auto cell = [&](double v, bool full) -> std::string {
      if (boolean) return v != 0.0 ? "true" : "false";
      return full ? format_full(v) : format_short(v);
    };

    if (format == "json") {
      Json j;
      j["query"] = query::pretty_print(f);
      j["kind"] = kind;
      j["value"] = boolean ? Json(headline(result) != 0.0) : json_number(headline(result));
      if (show_vector) {
        auto& arr = j["vector"] = Json::array();
        for (std::size_t s = 0; s < values.size(); ++s) {
          arr.push_back(boolean ? Json(values[s] != 0.0) : json_number(values[s]));
        }
      }
      std::cout << j.dump(2) << "\n";
    } else if (format == "csv") {
      if (show_vector) {
        std::cout << "index,value,state\n";
        for (std::size_t s = 0; s < values.size(); ++s) {
          std::cout << s << "," << cell(values[s], true) << "," << cli::csv_escape(describe(model->state(s))) << "\n";
        }
      } else {
        std::cout << "value\n" << cell(headline(result), true) << "\n";
      }
    } else {
      std::cout << cell(headline(result), false) << "\n";
      if (show_vector) {
        for (std::size_t s = 0; s < values.size(); ++s) {
          std::cout << s << "\t" << cell(values[s], false) << "\t" << describe(model->state(s)) << "\n";
        }
      }
    }
    return kOk;
  } catch (const Error& e) {
    return report_error(e, kEvalError);
  }
}

// ---- suite -----------------------------------------------------------------

int cmd_suite(const std::string& model_path, const std::string& suite_path, const std::string& format,
              bool no_timestamp) {
  int code = kOk;
  auto model = load(model_path, code);
  if (!model) return code;
  std::vector<cli::SuiteEntry> entries;
  try {
    entries = cli::load_suite(suite_path);
  } catch (const Error& e) {
    return report_error(e, kInputError);
  }
  const auto report = cli::run_suite(*model, entries);
  print_warnings(report.warnings);
  if (format == "json") {
    std::optional<std::string> ts;
    if (!no_timestamp) ts = utc_timestamp();
    std::cout << cli::suite_report_json(report, model_path, suite_path, ts).dump(2) << "\n";
  } else {
    for (const auto& r : report.results) {
      std::cout << cli::to_string(r.status) << "\t" << r.entry->id << "\t";
      if (r.status == cli::EntryStatus::Error) {
        std::cout << r.error;
      } else {
        std::cout << format_short(r.value);
        if (r.entry->expected) std::cout << " (expected " << format_short(*r.entry->expected) << ")";
      }
      std::cout << "\n";
    }
    std::cout << "passed=" << report.count(cli::EntryStatus::Pass) << " failed=" << report.count(cli::EntryStatus::Fail)
              << " errors=" << report.count(cli::EntryStatus::Error) << " info=" << report.count(cli::EntryStatus::Info)
              << "\n";
  }
  return report.exit_code();
}

// ---- experiment ------------------------------------------------------------

struct ExperimentArgs {
  std::string model, tmpl, var = "J", range, sort = "desc", format = "table";
  std::optional<std::size_t> top;
};

int cmd_experiment(const ExperimentArgs& a) {
  int code = kOk;
  auto model = load(a.model, code);
  if (!model) return code;

  engine::ExperimentSpec spec;
  spec.template_text = a.tmpl;
  spec.var = a.var;
  spec.order = a.sort == "asc" ? engine::SortOrder::Ascending : engine::SortOrder::Descending;
  spec.top_k = a.top;
  spec.lo = 0;
  spec.hi = static_cast<long long>(model->size()) - 1;
  if (!a.range.empty()) {
    const auto dots = a.range.find("..");
    try {
      if (dots == std::string::npos) throw std::invalid_argument("range");
      spec.lo = std::stoll(a.range.substr(0, dots));
      spec.hi = std::stoll(a.range.substr(dots + 2));
    } catch (const std::exception&) {
      std::cerr << "error: --range must look like lo..hi\n";
      return kInputError;
    }
  }

  engine::ExperimentResult result;
  try {
    result = engine::run_experiment(*model, spec);
  } catch (const Error& e) {
    return report_error(e, e.code() == ErrorCode::IndexOutOfRange ? kInputError : kEvalError);
  }
  for (const auto& err : result.errors) {
    std::cerr << "warning: j=" << err.index << ": " << err.message << "\n";
  }

  if (a.format == "json") {
    Json j;
    j["template"] = a.tmpl;
    j["range"] = {spec.lo, spec.hi};
    auto& rows = j["rows"] = Json::array();
    for (const auto& r : result.rows) {
      rows.push_back({{"index", r.index}, {"state", describe(r.state)}, {"value", json_number(r.value)}});
    }
    auto& errs = j["errors"] = Json::array();
    for (const auto& e : result.errors) {
      errs.push_back({{"index", e.index}, {"code", to_string(e.code)}, {"message", e.message}});
    }
    std::cout << j.dump(2) << "\n";
  } else if (a.format == "csv") {
    std::cout << "index,state,value\n";
    for (const auto& r : result.rows) {
      std::cout << r.index << "," << cli::csv_escape(describe(r.state)) << "," << format_full(r.value) << "\n";
    }
  } else {
    for (const auto& r : result.rows) {
      std::cout << r.index << "\t" << describe(r.state) << "\t" << format_short(r.value) << "\n";
    }
    if (!result.errors.empty()) std::cout << result.errors.size() << " index(es) failed to evaluate\n";
  }
  // Per-index failures are expected in sweeps; only a sweep with no value at all is an error.
  return result.rows.empty() && !result.errors.empty() ? kEvalError : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probabilistic model checking of courtroom interaction traces"};
  app.require_subcommand(1);
  int rc = kOk;

  BuildArgs build;
  auto* b = app.add_subcommand("build", "Build a model from a corpus CSV");
  b->add_option("corpus", build.corpus, "Corpus CSV file")->required();
  b->add_option("-o,--out", build.out, "Output model JSON")->required();
  b->add_option("--chief", build.chief, "Chief justice seat (J1..J9)")->capture_default_str();
  b->add_option("--recurrence", build.recurrence, "FINAL behaviour: restart or selfloop")->capture_default_str();
  b->add_option("--neg-max", build.neg_max, "Sentiment score at or below which an utterance is Neg")->capture_default_str();
  b->add_option("--pos-min", build.pos_min, "Sentiment score at or above which an utterance is Pos")->capture_default_str();
  b->callback([&] { rc = cmd_build(build); });

  std::string model_path, format = "table";
  auto* v = app.add_subcommand("validate", "Run the structural validation checks");
  v->add_option("-m,--model", model_path, "Model JSON")->required();
  v->add_option("--format", format, "table or json")->check(CLI::IsMember({"table", "json"}));
  v->callback([&] { rc = cmd_validate(model_path, format); });

  std::string query_text;
  bool vector = false;
  auto* c = app.add_subcommand("check", "Evaluate one query");
  c->add_option("-m,--model", model_path, "Model JSON")->required();
  c->add_option("query", query_text, "Query text")->required();
  c->add_option("--format", format, "table, json or csv")->check(CLI::IsMember({"table", "json", "csv"}));
  c->add_flag("--vector", vector, "Print the value of every state");
  c->callback([&] { rc = cmd_check(model_path, query_text, format, vector); });

  std::string suite_path;
  bool no_timestamp = false;
  auto* s = app.add_subcommand("suite", "Evaluate a query suite");
  s->add_option("-m,--model", model_path, "Model JSON")->required();
  s->add_option("suite", suite_path, "Suite JSON")->required();
  s->add_option("--format", format, "table or json")->check(CLI::IsMember({"table", "json"}));
  s->add_flag("--no-timestamp", no_timestamp, "Omit the timestamp from JSON reports");
  s->callback([&] { rc = cmd_suite(model_path, suite_path, format, no_timestamp); });

  ExperimentArgs exp;
  auto* e = app.add_subcommand("experiment", "Sweep a templated query over state indices");
  e->add_option("-m,--model", exp.model, "Model JSON")->required();
  e->add_option("--template", exp.tmpl, "Query template using @<var>")->required();
  e->add_option("--var", exp.var, "Placeholder name")->capture_default_str();
  e->add_option("--range", exp.range, "Index range lo..hi (inclusive, default: all states)");
  e->add_option("--sort", exp.sort, "desc or asc")->check(CLI::IsMember({"desc", "asc"}))->capture_default_str();
  e->add_option("--top", exp.top, "Keep only the top N rows");
  e->add_option("--format", exp.format, "table, json or csv")->check(CLI::IsMember({"table", "json", "csv"}));
  e->callback([&] { rc = cmd_experiment(exp); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kInputError;
  }
  return rc;
}
