#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "courtmc/core/error.hpp"

namespace courtmc::query {

/// Replaces every `@<var>` token in `text` with `value`.
/// `expand_template("filter(max,P=?[X(x=@J)],(x=@J))", "J", 5)` gives
/// `filter(max,P=?[X(x=5)],(x=5))`. Throws PLACEHOLDER_MISSING if no token occurs.
inline std::string expand_template(std::string_view text, std::string_view var, long long value) {
  const std::string token = "@" + std::string(var);
  const std::string replacement = std::to_string(value);
  std::string out;
  bool found = false;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.substr(i, token.size()) == token) {
      const std::size_t end = i + token.size();
      const bool boundary = end >= text.size() || !(std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_');
      if (boundary) {
        out += replacement;
        i = end;
        found = true;
        continue;
      }
    }
    out += text[i++];
  }
  if (!found) throw Error(ErrorCode::PlaceholderMissing, "template has no '" + token + "' placeholder");
  return out;
}

}  // namespace courtmc::query
