#pragma once

// Small text helpers shared by content_source and page_analysis. Not part of
// the public headers.

#include <string>
#include <string_view>

namespace wikiindex::detail {

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

// Letters, digits and every non-ASCII byte count as word characters.
inline bool is_word_byte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

std::string ascii_lowercase(std::string_view s);
bool iequals(std::string_view a, std::string_view b);

// Runs of whitespace become one space; leading and trailing space removed.
std::string collapse_whitespace(std::string_view s);

void append_utf8(std::string& out, char32_t cp);

// "%C3%A9" style escapes. Malformed escapes are copied through unchanged.
std::string percent_decode(std::string_view s);

// HTML character references. &nbsp; decodes to a plain space.
std::string decode_entities(std::string_view s);

}  // namespace wikiindex::detail
