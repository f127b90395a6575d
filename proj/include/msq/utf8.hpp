#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace msq::utf8 {

/// One decoded code point and the number of bytes it occupied.
/// Invalid sequences decode as U+FFFD consuming a single byte.
struct Decoded {
  char32_t code_point;
  std::size_t length;
};

Decoded decode(std::string_view text, std::size_t pos);
void append(std::string& out, char32_t cp);

// Letter/digit classification over a fixed table of scripts (Latin, Greek,
// Cyrillic, Armenian, Hebrew, Arabic, Devanagari, Thai, Hangul, Kana, CJK).
// Symbols, punctuation, emoji and unlisted blocks count as non-alphanumeric.
bool is_alnum(char32_t cp);
bool is_space(char32_t cp);
char32_t to_lower(char32_t cp);

std::size_t count_alnum(std::string_view text);

/// Fraction of non-whitespace code points that are ASCII; 1.0 for text
/// without any non-whitespace code point.
double ascii_ratio(std::string_view text);

}  // namespace msq::utf8
