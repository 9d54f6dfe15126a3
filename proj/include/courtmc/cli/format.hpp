#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace courtmc::cli {

/// 6 significant digits for tables; +∞ as `inf`.
inline std::string format_short(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// Shortest round-trip text (full precision); +∞ as `inf`.
inline std::string format_full(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return nlohmann::json(v).dump();
}

/// JSON has no infinity literal; it is carried as the string "inf".
inline nlohmann::ordered_json json_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace courtmc::cli
