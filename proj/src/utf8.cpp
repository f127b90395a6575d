#include "msq/utf8.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace msq::utf8 {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

// Inclusive ranges of letters and digits outside ASCII.
constexpr std::array<std::pair<char32_t, char32_t>, 30> kAlnumRanges{{
    {0x00AA, 0x00AA}, {0x00B5, 0x00B5}, {0x00BA, 0x00BA},
    {0x00C0, 0x00D6}, {0x00D8, 0x00F6}, {0x00F8, 0x024F},  // Latin-1, Ext-A/B
    {0x0370, 0x0373}, {0x0376, 0x0377}, {0x037B, 0x037D},
    {0x0386, 0x0386}, {0x0388, 0x03FF},                    // Greek
    {0x0400, 0x0481}, {0x048A, 0x052F},                    // Cyrillic
    {0x0531, 0x0587},                                      // Armenian
    {0x05D0, 0x05EA},                                      // Hebrew
    {0x0620, 0x064A}, {0x0660, 0x0669},                    // Arabic
    {0x0904, 0x0939}, {0x0966, 0x096F},                    // Devanagari
    {0x0E01, 0x0E30}, {0x0E50, 0x0E59},                    // Thai
    {0x1E00, 0x1FFF},                                      // Latin/Greek ext
    {0x3041, 0x3096}, {0x30A1, 0x30FA},                    // Kana
    {0x3400, 0x4DBF}, {0x4E00, 0x9FFF},                    // CJK
    {0xAC00, 0xD7A3},                                      // Hangul
    {0xF900, 0xFAFF},                                      // CJK compat
    {0xFF10, 0xFF19}, {0xFF21, 0xFF5A},                    // fullwidth
}};

}  // namespace

Decoded decode(std::string_view text, std::size_t pos) {
  const auto b0 = static_cast<unsigned char>(text[pos]);
  if (b0 < 0x80) return {b0, 1};

  std::size_t len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return {kReplacement, 1};
  }
  if (pos + len > text.size()) return {kReplacement, 1};
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(text[pos + i]);
    if ((b & 0xC0) != 0x80) return {kReplacement, 1};
    cp = (cp << 6) | (b & 0x3F);
  }
  return {cp, len};
}

void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_alnum(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') ||
           (cp >= 'A' && cp <= 'Z');
  }
  if (cp == 0x00D7 || cp == 0x00F7) return false;
  return std::any_of(kAlnumRanges.begin(), kAlnumRanges.end(),
                     [cp](const auto& r) { return cp >= r.first && cp <= r.second; });
}

bool is_space(char32_t cp) {
  switch (cp) {
    case ' ': case '\t': case '\n': case '\r': case '\v': case '\f':
    case 0x00A0: case 0x2028: case 0x2029: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp < 0x80) return cp;
  if ((cp >= 0x00C0 && cp <= 0x00DE) && cp != 0x00D7) return cp + 0x20;
  if (cp >= 0x0391 && cp <= 0x03A9 && cp != 0x03A2) return cp + 0x20;
  if (cp >= 0x0410 && cp <= 0x042F) return cp + 0x20;
  if (cp >= 0x0400 && cp <= 0x040F) return cp + 0x50;
  // Latin Extended-A pairs upper/lower case on alternating code points.
  if (cp >= 0x0100 && cp <= 0x0137) return cp % 2 == 0 ? cp + 1 : cp;
  if (cp >= 0x0139 && cp <= 0x0148) return cp % 2 == 1 ? cp + 1 : cp;
  if (cp >= 0x014A && cp <= 0x0177) return cp % 2 == 0 ? cp + 1 : cp;
  if (cp == 0x0178) return 0x00FF;
  if (cp >= 0x0179 && cp <= 0x017E) return cp % 2 == 1 ? cp + 1 : cp;
  return cp;
}

std::size_t count_alnum(std::string_view text) {
  std::size_t n = 0;
  for (std::size_t pos = 0; pos < text.size();) {
    const auto d = decode(text, pos);
    if (is_alnum(d.code_point)) ++n;
    pos += d.length;
  }
  return n;
}

double ascii_ratio(std::string_view text) {
  std::size_t ascii = 0;
  std::size_t total = 0;
  for (std::size_t pos = 0; pos < text.size();) {
    const auto d = decode(text, pos);
    pos += d.length;
    if (is_space(d.code_point)) continue;
    ++total;
    if (d.code_point < 0x80) ++ascii;
  }
  return total == 0 ? 1.0 : static_cast<double>(ascii) / static_cast<double>(total);
}

}  // namespace msq::utf8
