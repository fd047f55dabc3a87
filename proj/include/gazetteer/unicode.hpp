// Copyright 2026 The Gazetteer Authors
// Licensed under the Apache License, Version 2.0
//
// Minimal Unicode support: UTF-8 transcoding, simple case pairs for the
// scripts the toolkit ships transliteration tables for, letter/space
// classification for word boundaries, and accent-to-base folding.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace gazetteer {

inline std::u32string utf8_decode(std::string_view in) {
  std::u32string out;
  out.reserve(in.size());
  size_t i = 0;
  const size_t n = in.size();
  while (i < n) {
    const unsigned char b0 = static_cast<unsigned char>(in[i]);
    char32_t cp = 0xFFFD;
    size_t len = 1;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0 && i + 1 < n) {
      const unsigned char b1 = static_cast<unsigned char>(in[i + 1]);
      if ((b1 & 0xC0) == 0x80) {
        cp = (static_cast<char32_t>(b0 & 0x1F) << 6) | (b1 & 0x3F);
        len = 2;
        if (cp < 0x80) cp = 0xFFFD;
      }
    } else if ((b0 & 0xF0) == 0xE0 && i + 2 < n) {
      const unsigned char b1 = static_cast<unsigned char>(in[i + 1]);
      const unsigned char b2 = static_cast<unsigned char>(in[i + 2]);
      if ((b1 & 0xC0) == 0x80 && (b2 & 0xC0) == 0x80) {
        cp = (static_cast<char32_t>(b0 & 0x0F) << 12) |
             (static_cast<char32_t>(b1 & 0x3F) << 6) | (b2 & 0x3F);
        len = 3;
        if (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
      }
    } else if ((b0 & 0xF8) == 0xF0 && i + 3 < n) {
      const unsigned char b1 = static_cast<unsigned char>(in[i + 1]);
      const unsigned char b2 = static_cast<unsigned char>(in[i + 2]);
      const unsigned char b3 = static_cast<unsigned char>(in[i + 3]);
      if ((b1 & 0xC0) == 0x80 && (b2 & 0xC0) == 0x80 && (b3 & 0xC0) == 0x80) {
        cp = (static_cast<char32_t>(b0 & 0x07) << 18) |
             (static_cast<char32_t>(b1 & 0x3F) << 12) |
             (static_cast<char32_t>(b2 & 0x3F) << 6) | (b3 & 0x3F);
        len = 4;
        if (cp < 0x10000 || cp > 0x10FFFF) cp = 0xFFFD;
      }
    }
    if (cp == 0xFFFD && len == 1) len = 1;
    out.push_back(cp);
    i += len;
  }
  return out;
}

inline void utf8_append(std::string& out, char32_t cp) {
  if (cp <= 0x7F) {
    out.push_back(static_cast<char>(cp));
  } else if (cp <= 0x7FF) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp <= 0xFFFF) {
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

inline std::string utf8_encode(std::u32string_view in) {
  std::string out;
  out.reserve(in.size());
  for (char32_t cp : in) utf8_append(out, cp);
  return out;
}

inline bool is_space(char32_t cp) {
  switch (cp) {
    case U' ': case U'\t': case U'\n': case U'\r': case U'\v': case U'\f':
    case 0x00A0: case 0x1680: case 0x2028: case 0x2029: case 0x202F:
    case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

// Word-boundary letter test. Block-granular for scripts where the toolkit
// never inspects individual characters; combining marks inside those blocks
// count as letters so a marked syllable stays one word.
inline bool is_letter(char32_t cp) {
  struct Range { char32_t lo, hi; };
  static constexpr Range kRanges[] = {
      {0x0041, 0x005A}, {0x0061, 0x007A}, {0x00AA, 0x00AA}, {0x00B5, 0x00B5},
      {0x00BA, 0x00BA}, {0x00C0, 0x00D6}, {0x00D8, 0x00F6}, {0x00F8, 0x02C1},
      {0x0370, 0x0374}, {0x0376, 0x0377}, {0x037A, 0x037D}, {0x037F, 0x037F},
      {0x0386, 0x0386}, {0x0388, 0x038A}, {0x038C, 0x038C}, {0x038E, 0x03A1},
      {0x03A3, 0x03F5}, {0x03F7, 0x0481}, {0x048A, 0x052F}, {0x0531, 0x0556},
      {0x0561, 0x0587}, {0x05D0, 0x05EA}, {0x0620, 0x064A}, {0x064B, 0x065F},
      {0x066E, 0x06D3}, {0x0900, 0x0963}, {0x0971, 0x097F}, {0x0C80, 0x0CFF},
      {0x10A0, 0x10FF}, {0x1E00, 0x1FFF}, {0x3040, 0x309F}, {0x30A0, 0x30FF},
      {0x3400, 0x4DBF}, {0x4E00, 0x9FFF}, {0xA720, 0xA7FF}, {0xAC00, 0xD7A3},
      {0xF900, 0xFAFF},
  };
  for (const Range& r : kRanges) {
    if (cp < r.lo) return false;
    if (cp <= r.hi) return true;
  }
  return false;
}

inline char32_t to_lower_simple(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 32;
  if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 32;
  if (cp >= 0x0100 && cp <= 0x0137) return (cp | 1);
  if (cp >= 0x0139 && cp <= 0x0148) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x014A && cp <= 0x0177) return (cp | 1);
  if (cp == 0x0178) return 0x00FF;
  if (cp >= 0x0179 && cp <= 0x017E) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp == 0x0386) return 0x03AC;
  if (cp >= 0x0388 && cp <= 0x038A) return cp + 0x25;
  if (cp == 0x038C) return 0x03CC;
  if (cp == 0x038E || cp == 0x038F) return cp + 0x3F;
  if (cp >= 0x0391 && cp <= 0x03A1) return cp + 32;
  if (cp >= 0x03A3 && cp <= 0x03AB) return cp + 32;
  if (cp >= 0x0400 && cp <= 0x040F) return cp + 80;
  if (cp >= 0x0410 && cp <= 0x042F) return cp + 32;
  if (cp >= 0x0460 && cp <= 0x0481 && cp % 2 == 0) return cp + 1;
  if (cp >= 0x048A && cp <= 0x04BF && cp % 2 == 0) return cp + 1;
  if (cp == 0x04C0) return 0x04CF;
  if (cp >= 0x04C1 && cp <= 0x04CD && cp % 2 == 1) return cp + 1;
  if (cp >= 0x04D0 && cp <= 0x052F && cp % 2 == 0) return cp + 1;
  return cp;
}

inline char32_t to_upper_simple(char32_t cp) {
  if (cp >= U'a' && cp <= U'z') return cp - 32;
  if (cp >= 0x00E0 && cp <= 0x00FE && cp != 0x00F7) return cp - 32;
  if (cp == 0x00FF) return 0x0178;
  if (cp >= 0x0101 && cp <= 0x0137) return (cp % 2 == 1) ? cp - 1 : cp;
  if (cp >= 0x013A && cp <= 0x0148) return (cp % 2 == 0) ? cp - 1 : cp;
  if (cp >= 0x014B && cp <= 0x0177) return (cp % 2 == 1) ? cp - 1 : cp;
  if (cp >= 0x017A && cp <= 0x017E) return (cp % 2 == 0) ? cp - 1 : cp;
  if (cp == 0x03AC) return 0x0386;
  if (cp >= 0x03AD && cp <= 0x03AF) return cp - 0x25;
  if (cp == 0x03CC) return 0x038C;
  if (cp == 0x03CD || cp == 0x03CE) return cp - 0x3F;
  if (cp == 0x03C2) return 0x03A3;
  if (cp >= 0x03B1 && cp <= 0x03C1) return cp - 32;
  if (cp >= 0x03C3 && cp <= 0x03CB) return cp - 32;
  if (cp >= 0x0450 && cp <= 0x045F) return cp - 80;
  if (cp >= 0x0430 && cp <= 0x044F) return cp - 32;
  if (cp >= 0x0461 && cp <= 0x0481 && cp % 2 == 1) return cp - 1;
  if (cp >= 0x048B && cp <= 0x04BF && cp % 2 == 1) return cp - 1;
  if (cp == 0x04CF) return 0x04C0;
  if (cp >= 0x04C2 && cp <= 0x04CE && cp % 2 == 0) return cp - 1;
  if (cp >= 0x04D1 && cp <= 0x052F && cp % 2 == 1) return cp - 1;
  return cp;
}

inline bool is_upper_letter(char32_t cp) {
  return is_letter(cp) && to_lower_simple(cp) != cp;
}

// Case class used by the matcher: lowercases, and folds final sigma onto
// sigma so the two Greek lowercase forms land in one class.
inline char32_t fold_case(char32_t cp) {
  const char32_t lo = to_lower_simple(cp);
  return lo == 0x03C2 ? 0x03C3 : lo;
}

// Accent-to-base map for lowercase Latin. Caron z and caron s are absent on
// purpose: the normalization cascade rewrites them as whole letters.
inline const char* accent_base(char32_t cp) {
  switch (cp) {
    case 0x00E0: case 0x00E1: case 0x00E2: case 0x00E3: case 0x00E4:
    case 0x00E5: case 0x0101: case 0x0103: case 0x0105:
      return "a";
    case 0x00E7: case 0x0107: case 0x0109: case 0x010B: case 0x010D:
      return "c";
    case 0x010F: case 0x0111: case 0x00F0:
      return "d";
    case 0x00E8: case 0x00E9: case 0x00EA: case 0x00EB: case 0x0113:
    case 0x0115: case 0x0117: case 0x0119: case 0x011B:
      return "e";
    case 0x011D: case 0x011F: case 0x0121: case 0x0123:
      return "g";
    case 0x0125: case 0x0127:
      return "h";
    case 0x00EC: case 0x00ED: case 0x00EE: case 0x00EF: case 0x0129:
    case 0x012B: case 0x012D: case 0x012F: case 0x0131:
      return "i";
    case 0x0135:
      return "j";
    case 0x0137: case 0x0138:
      return "k";
    case 0x013A: case 0x013C: case 0x013E: case 0x0140: case 0x0142:
      return "l";
    case 0x00F1: case 0x0144: case 0x0146: case 0x0148: case 0x0149:
    case 0x014B:
      return "n";
    case 0x00F2: case 0x00F3: case 0x00F4: case 0x00F5: case 0x00F6:
    case 0x00F8: case 0x014D: case 0x014F: case 0x0151:
      return "o";
    case 0x0155: case 0x0157: case 0x0159:
      return "r";
    case 0x015B: case 0x015D: case 0x015F: case 0x017F:
      return "s";
    case 0x0163: case 0x0165: case 0x0167:
      return "t";
    case 0x00F9: case 0x00FA: case 0x00FB: case 0x00FC: case 0x0169:
    case 0x016B: case 0x016D: case 0x016F: case 0x0171: case 0x0173:
      return "u";
    case 0x0175:
      return "w";
    case 0x00FD: case 0x00FF: case 0x0177:
      return "y";
    case 0x017A: case 0x017C:
      return "z";
    case 0x00E6:
      return "ae";
    case 0x0153:
      return "oe";
    case 0x00DF:
      return "ss";
    case 0x00FE:
      return "th";
    default:
      return nullptr;
  }
}

enum class Script { Latin, Greek, Cyrillic, Other };

inline Script script_of(char32_t cp) {
  if (cp < 0x0370) return Script::Latin;
  if (cp >= 0x0370 && cp <= 0x03FF) return Script::Greek;
  if (cp >= 0x0400 && cp <= 0x052F) return Script::Cyrillic;
  if (cp >= 0x1E00 && cp <= 0x1EFF) return Script::Latin;
  if (cp >= 0x1F00 && cp <= 0x1FFF) return Script::Greek;
  return Script::Other;
}

}  // namespace gazetteer
