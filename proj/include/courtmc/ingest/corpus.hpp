#pragma once

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/tokenizer.hpp>

#include "courtmc/core/error.hpp"
#include "courtmc/core/state.hpp"

namespace courtmc::ingest {

/// One CSV row. Each classification dimension carries either the raw measurement
/// or a pre-assigned class, never both.
struct UtteranceRecord {
  std::string case_id;
  std::size_t position = 0;
  std::string speaker_name;  // J1..J9 for justices, any advocate identifier otherwise
  bool is_justice = false;
  Side side = Side::PP;
  Amicus ac = Amicus::No;
  WinSide win = WinSide::Respondents;
  VoteVector votes{};
  EndType end = EndType::SF;
  std::optional<double> sentiment_score;
  std::optional<Sentiment> sentiment_class;
  std::optional<long long> token_length;
  std::optional<LengthClass> length_class;
  std::optional<long long> pause_count;
  std::optional<PauseClass> pause_class;
  std::optional<UtteranceType> type_hint;
  std::size_t line = 0;  // 1-based source line, 0 when built in code

  std::optional<JusticeId> justice() const { return is_justice ? JusticeId::parse(speaker_name) : std::nullopt; }
};

struct Trace {
  std::string case_id;
  std::vector<UtteranceRecord> records;  // sorted by position
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  using Sep = boost::escaped_list_separator<char>;
  boost::tokenizer<Sep> tok(line, Sep('\\', ',', '"'));
  std::vector<std::string> out;
  for (const auto& field : tok) {
    const auto first = field.find_first_not_of(" \t");
    const auto last = field.find_last_not_of(" \t");
    out.push_back(first == std::string::npos ? std::string() : field.substr(first, last - first + 1));
  }
  return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

inline std::optional<bool> parse_bool(std::string_view s) {
  if (s == "1" || s == "true" || s == "TRUE" || s == "yes") return true;
  if (s == "0" || s == "false" || s == "FALSE" || s == "no") return false;
  return std::nullopt;
}

/// Column positions resolved from the header row.
struct Columns {
  std::size_t case_id, position, speaker_name, is_justice, side, ac, win_side, votes, end_type;
  std::optional<std::size_t> sentiment_score, sentiment_class, length, length_class, pauses, pause_class, type_hint;
  std::size_t count = 0;

  static Columns from_header(const std::vector<std::string>& header) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (!index.emplace(header[i], i).second) {
        throw InputError(ErrorCode::MalformedRow, 1, "duplicate column '" + header[i] + "'");
      }
    }
    auto opt = [&](const char* name) -> std::optional<std::size_t> {
      auto it = index.find(name);
      return it == index.end() ? std::nullopt : std::optional(it->second);
    };
    auto req = [&](const char* name) {
      auto c = opt(name);
      if (!c) throw InputError(ErrorCode::MalformedRow, 1, std::string("missing required column '") + name + "'");
      return *c;
    };
    Columns c{req("case_id"), req("position"), req("speaker_name"), req("is_justice"), req("side"),
              req("ac"),      req("win_side"), req("votes"),        req("end_type"),   opt("sentiment_score"),
              opt("sentiment_class"), opt("length"), opt("length_class"), opt("pauses"), opt("pause_class"),
              opt("type_hint")};
    auto exactly_one = [](const auto& a, const auto& b, const char* raw, const char* cls) {
      if (a.has_value() == b.has_value()) {
        throw InputError(ErrorCode::MalformedRow, 1,
                         std::string("header needs exactly one of '") + raw + "' and '" + cls + "'");
      }
    };
    exactly_one(c.sentiment_score, c.sentiment_class, "sentiment_score", "sentiment_class");
    exactly_one(c.length, c.length_class, "length", "length_class");
    exactly_one(c.pauses, c.pause_class, "pauses", "pause_class");
    c.count = header.size();
    return c;
  }
};

inline UtteranceRecord parse_row(const std::vector<std::string>& f, const Columns& c, std::size_t line) {
  auto bad = [line](const std::string& why) { return InputError(ErrorCode::MalformedRow, line, why); };
  if (f.size() != c.count) {
    throw bad("expected " + std::to_string(c.count) + " fields, found " + std::to_string(f.size()));
  }
  auto need = [&](auto parsed, std::size_t col, const char* what) {
    if (!parsed) throw bad(std::string("invalid ") + what + " '" + f[col] + "'");
    return *parsed;
  };

  UtteranceRecord r;
  r.line = line;
  r.case_id = f[c.case_id];
  if (r.case_id.empty()) throw bad("empty case_id");
  r.position = need(parse_number<std::size_t>(f[c.position]), c.position, "position");
  r.speaker_name = f[c.speaker_name];
  if (r.speaker_name.empty()) throw bad("empty speaker_name");
  r.is_justice = need(parse_bool(f[c.is_justice]), c.is_justice, "is_justice");
  r.side = need(parse_side(f[c.side]), c.side, "side");
  r.ac = need(parse_amicus(f[c.ac]), c.ac, "ac");
  r.win = need(parse_win_side(f[c.win_side]), c.win_side, "win_side");
  r.votes = need(parse_votes(f[c.votes]), c.votes, "votes (9 characters over 0/1/U)");
  r.end = need(parse_end_type(f[c.end_type]), c.end_type, "end_type");

  if (r.is_justice != (r.side == Side::JJ)) throw bad("is_justice must hold exactly when side is JJ");
  if (r.is_justice && !JusticeId::parse(r.speaker_name)) throw bad("justice speaker must be J1..J9");

  if (c.sentiment_score) {
    const double s = need(parse_number<double>(f[*c.sentiment_score]), *c.sentiment_score, "sentiment_score");
    if (!(s >= -1.0 && s <= 1.0)) throw bad("sentiment_score outside [-1,1]");
    r.sentiment_score = s;
  } else {
    r.sentiment_class = need(parse_sentiment(f[*c.sentiment_class]), *c.sentiment_class, "sentiment_class");
  }
  if (c.length) {
    const auto n = need(parse_number<long long>(f[*c.length]), *c.length, "length");
    if (n < 1) throw bad("length must be positive");
    r.token_length = n;
  } else {
    r.length_class = need(parse_length_class(f[*c.length_class]), *c.length_class, "length_class");
  }
  if (c.pauses) {
    const auto n = need(parse_number<long long>(f[*c.pauses]), *c.pauses, "pauses");
    if (n < 0) throw bad("pauses must be non-negative");
    r.pause_count = n;
  } else {
    r.pause_class = need(parse_pause_class(f[*c.pause_class]), *c.pause_class, "pause_class");
  }
  if (c.type_hint && !f[*c.type_hint].empty()) {
    r.type_hint = need(parse_utterance_type(f[*c.type_hint]), *c.type_hint, "type_hint");
  }
  return r;
}

}  // namespace detail

/// Groups records into traces (cases in order of first appearance), sorts each by
/// position and checks positions run 0..n-1 and case metadata agrees.
inline std::vector<Trace> group_traces(std::vector<UtteranceRecord> records) {
  std::vector<Trace> traces;
  std::map<std::string, std::size_t> slot;
  for (auto& r : records) {
    auto [it, inserted] = slot.emplace(r.case_id, traces.size());
    if (inserted) traces.push_back({r.case_id, {}});
    traces[it->second].records.push_back(std::move(r));
  }
  for (auto& t : traces) {
    auto& rs = t.records;
    std::stable_sort(rs.begin(), rs.end(), [](const auto& a, const auto& b) { return a.position < b.position; });
    for (std::size_t i = 0; i < rs.size(); ++i) {
      if (rs[i].position != i) {
        throw InputError(ErrorCode::GapInPositions, rs[i].line ? std::optional(rs[i].line) : std::nullopt,
                         "case '" + t.case_id + "': expected position " + std::to_string(i) + ", found " +
                             std::to_string(rs[i].position));
      }
      if (rs[i].win != rs.front().win || rs[i].votes != rs.front().votes) {
        throw InputError(ErrorCode::InconsistentCaseMetadata,
                         rs[i].line ? std::optional(rs[i].line) : std::nullopt,
                         "case '" + t.case_id + "': win_side/votes differ between rows");
      }
    }
  }
  return traces;
}

inline std::vector<Trace> parse_corpus_text(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<detail::Columns> columns;
  std::vector<UtteranceRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<std::string> fields;
    try {
      fields = detail::split_csv_line(line);
    } catch (const boost::escaped_list_error& e) {
      throw InputError(ErrorCode::MalformedRow, line_no, std::string("bad quoting: ") + e.what());
    }
    if (!columns) {
      columns = detail::Columns::from_header(fields);
      continue;
    }
    records.push_back(detail::parse_row(fields, *columns, line_no));
  }
  if (!columns) throw InputError(ErrorCode::MalformedRow, std::nullopt, "missing header row");
  return group_traces(std::move(records));
}

/// Reads a corpus file in the CSV contract: one trace per case_id.
inline std::vector<Trace> parse_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open corpus file '" + path + "'");
  return parse_corpus_text(in);
}

}  // namespace courtmc::ingest
