// Copyright 2026 The Gazetteer Authors
// Licensed under the Apache License, Version 2.0
//
// The name-key pipeline: transliteration to lowercase Latin, the rewrite
// cascade that folds spelling variation, consonant signatures, and the
// pairwise similarity score used by the merger.

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gazetteer/unicode.hpp"

namespace gazetteer {

// Grapheme rewrite table for one or more source scripts. Sources of any
// length are allowed; lookup is longest-source-first at each position.
struct TransliterationTable {
  std::unordered_map<std::u32string, std::u32string> rules;
  std::size_t max_source_len = 0;

  void add(std::u32string source, std::u32string replacement) {
    max_source_len = std::max(max_source_len, source.size());
    rules.emplace(std::move(source), std::move(replacement));
  }

  // One rule per line: source TAB replacement. '#' starts a comment line.
  void load(std::string_view text) {
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t eol = text.find('\n', pos);
      if (eol == std::string_view::npos) eol = text.size();
      std::string_view line = text.substr(pos, eol - pos);
      pos = eol + 1;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (line.empty() || line.front() == '#') continue;
      const std::size_t tab = line.find('\t');
      if (tab == std::string_view::npos) continue;
      add(utf8_decode(line.substr(0, tab)), utf8_decode(line.substr(tab + 1)));
    }
  }
};

// Rewrites non-Latin graphemes through the table and lowercases the result.
// Latin input passes through with accents intact; characters of unmapped
// scripts are dropped and reported through `dropped` when given.
inline std::string transliterate(std::string_view name,
                                 const TransliterationTable& table,
                                 std::vector<char32_t>* dropped = nullptr) {
  const std::u32string in = utf8_decode(name);
  std::u32string out;
  out.reserve(in.size());
  std::size_t i = 0;
  while (i < in.size()) {
    bool rewritten = false;
    const std::size_t longest = std::min(table.max_source_len, in.size() - i);
    for (std::size_t len = longest; len >= 1; --len) {
      const auto it = table.rules.find(in.substr(i, len));
      if (it != table.rules.end()) {
        out += it->second;
        i += len;
        rewritten = true;
        break;
      }
    }
    if (rewritten) continue;
    const char32_t cp = in[i++];
    if (is_space(cp)) {
      out.push_back(U' ');
    } else if (cp < 0x80) {
      out.push_back(cp);
    } else if (is_letter(cp) && script_of(cp) == Script::Latin) {
      out.push_back(cp);
    } else if (dropped != nullptr) {
      dropped->push_back(cp);
    }
  }
  for (char32_t& cp : out) cp = to_lower_simple(cp);
  // Tidy whitespace left by dropped characters.
  std::u32string tidy;
  tidy.reserve(out.size());
  for (char32_t cp : out) {
    if (cp == U' ' && (tidy.empty() || tidy.back() == U' ')) continue;
    tidy.push_back(cp);
  }
  while (!tidy.empty() && tidy.back() == U' ') tidy.pop_back();
  return utf8_encode(tidy);
}

struct RewriteRule {
  enum class Op { StripAccents, Degeminate, Replace, TokenStartStrip };
  enum class Anchor { Any, NameStart, NameEnd };

  Op op = Op::Replace;
  Anchor anchor = Anchor::Any;
  std::u32string source;
  std::u32string replacement;

  static RewriteRule replace(std::u32string src, std::u32string dst,
                             Anchor a = Anchor::Any) {
    RewriteRule r;
    r.op = Op::Replace;
    r.anchor = a;
    r.source = std::move(src);
    r.replacement = std::move(dst);
    return r;
  }
};

class EmptyRuleSet : public std::runtime_error {
 public:
  EmptyRuleSet() : std::runtime_error("rule set has no entries") {}
};

struct NormalizationRuleSet {
  std::vector<RewriteRule> rules;

  static NormalizationRuleSet default_set() {
    NormalizationRuleSet s;
    s.rules.push_back({RewriteRule::Op::StripAccents, RewriteRule::Anchor::Any, {}, {}});
    s.rules.push_back({RewriteRule::Op::Degeminate, RewriteRule::Anchor::Any, {}, {}});
    s.rules.push_back(RewriteRule::replace(U"ou", U"u"));
    s.rules.push_back({RewriteRule::Op::TokenStartStrip, RewriteRule::Anchor::Any, U"al-", {}});
    s.rules.push_back(RewriteRule::replace(U"wl", U"vl", RewriteRule::Anchor::NameStart));
    s.rules.push_back(RewriteRule::replace(U"ow", U"ov", RewriteRule::Anchor::NameEnd));
    s.rules.push_back(RewriteRule::replace(U"ck", U"k"));
    s.rules.push_back(RewriteRule::replace(U"ph", U"f"));
    s.rules.push_back(RewriteRule::replace(U"ž", U"j"));
    s.rules.push_back(RewriteRule::replace(U"š", U"sh"));
    s.rules.push_back(RewriteRule::replace(U"x", U"ks"));
    return s;
  }

  // Appends rules from a file: source TAB replacement TAB anchor, where
  // anchor is one of any|start|end and the replacement may be empty.
  void load_extra(std::string_view text) {
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t eol = text.find('\n', pos);
      if (eol == std::string_view::npos) eol = text.size();
      std::string_view line = text.substr(pos, eol - pos);
      pos = eol + 1;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (line.empty() || line.front() == '#') continue;
      const std::size_t t1 = line.find('\t');
      if (t1 == std::string_view::npos) continue;
      const std::size_t t2 = line.find('\t', t1 + 1);
      std::string_view src = line.substr(0, t1);
      std::string_view dst = t2 == std::string_view::npos
                                 ? line.substr(t1 + 1)
                                 : line.substr(t1 + 1, t2 - t1 - 1);
      std::string_view anchor =
          t2 == std::string_view::npos ? "any" : line.substr(t2 + 1);
      auto a = RewriteRule::Anchor::Any;
      if (anchor == "start") a = RewriteRule::Anchor::NameStart;
      if (anchor == "end") a = RewriteRule::Anchor::NameEnd;
      if (src.empty()) continue;
      rules.push_back(RewriteRule::replace(utf8_decode(src), utf8_decode(dst), a));
    }
  }
};

namespace normdetail {

inline bool is_ascii_vowel(char32_t cp) {
  return cp == U'a' || cp == U'e' || cp == U'i' || cp == U'o' || cp == U'u';
}

inline std::u32string strip_accents(const std::u32string& s) {
  std::u32string out;
  out.reserve(s.size());
  for (char32_t cp : s) {
    if (const char* base = accent_base(cp)) {
      for (const char* p = base; *p != '\0'; ++p)
        out.push_back(static_cast<char32_t>(*p));
    } else {
      out.push_back(cp);
    }
  }
  return out;
}

inline std::u32string degeminate(const std::u32string& s) {
  std::u32string out;
  out.reserve(s.size());
  for (char32_t cp : s) {
    if (!out.empty() && out.back() == cp && is_letter(cp) && !is_ascii_vowel(cp))
      continue;
    out.push_back(cp);
  }
  return out;
}

inline std::u32string replace_once_through(const std::u32string& s,
                                           const std::u32string& src,
                                           const std::u32string& dst) {
  if (src.empty()) return s;
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (i + src.size() <= s.size() && s.compare(i, src.size(), src) == 0) {
      out += dst;
      i += src.size();
    } else {
      out.push_back(s[i++]);
    }
  }
  return out;
}

inline std::u32string token_start_strip(const std::u32string& s,
                                        const std::u32string& src) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const bool at_token_start = i == 0 || s[i - 1] == U' ';
    if (at_token_start && i + src.size() <= s.size() &&
        s.compare(i, src.size(), src) == 0) {
      i += src.size();
      continue;
    }
    out.push_back(s[i++]);
  }
  return out;
}

inline std::u32string apply_rule(const std::u32string& s, const RewriteRule& r) {
  switch (r.op) {
    case RewriteRule::Op::StripAccents:
      return strip_accents(s);
    case RewriteRule::Op::Degeminate:
      return degeminate(s);
    case RewriteRule::Op::TokenStartStrip:
      return token_start_strip(s, r.source);
    case RewriteRule::Op::Replace:
      break;
  }
  switch (r.anchor) {
    case RewriteRule::Anchor::NameStart:
      if (s.size() >= r.source.size() &&
          s.compare(0, r.source.size(), r.source) == 0)
        return r.replacement + s.substr(r.source.size());
      return s;
    case RewriteRule::Anchor::NameEnd:
      if (s.size() >= r.source.size() &&
          s.compare(s.size() - r.source.size(), r.source.size(), r.source) == 0)
        return s.substr(0, s.size() - r.source.size()) + r.replacement;
      return s;
    case RewriteRule::Anchor::Any:
      break;
  }
  return replace_once_through(s, r.source, r.replacement);
}

}  // namespace normdetail

// Applies the cascade to a fixed point, then restricts the result to
// lowercase ASCII letters and single spaces (hyphen, slash and dot become
// spaces; anything else unhandled is dropped).
inline std::string normalize(std::string_view translit,
                             const NormalizationRuleSet& rules) {
  std::u32string s = utf8_decode(translit);
  for (int pass = 0; pass < 32; ++pass) {
    std::u32string next = s;
    for (const RewriteRule& r : rules.rules) next = normdetail::apply_rule(next, r);
    if (next == s) break;
    s = std::move(next);
  }
  std::u32string clean;
  clean.reserve(s.size());
  for (char32_t cp : s) {
    if (cp == U'-' || cp == U'/' || cp == U'.') cp = U' ';
    const bool keep = (cp >= U'a' && cp <= U'z') || cp == U' ';
    if (!keep) continue;
    if (cp == U' ' && (clean.empty() || clean.back() == U' ')) continue;
    clean.push_back(cp);
  }
  while (!clean.empty() && clean.back() == U' ') clean.pop_back();
  return utf8_encode(clean);
}

inline std::string consonant_signature(std::string_view normalized) {
  std::string out;
  out.reserve(normalized.size());
  bool token_wrote = false;
  bool pending_space = false;
  for (char c : normalized) {
    if (c == ' ') {
      if (token_wrote) pending_space = true;
      token_wrote = false;
      continue;
    }
    if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') continue;
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(c);
    token_wrote = true;
  }
  return out;
}

struct NameKey {
  std::string translit;
  std::string normalized;
  std::string signature;
  std::u32string translit_cps;
  std::u32string normalized_cps;

  bool operator==(const NameKey&) const = default;
};

inline NameKey make_key(std::string_view surface,
                        const TransliterationTable& table,
                        const NormalizationRuleSet& rules) {
  NameKey k;
  k.translit = transliterate(surface, table);
  k.normalized = normalize(k.translit, rules);
  k.signature = consonant_signature(k.normalized);
  k.translit_cps = utf8_decode(k.translit);
  k.normalized_cps = utf8_decode(k.normalized);
  return k;
}

inline std::size_t levenshtein(const std::u32string& a, const std::u32string& b) {
  if (a.empty()) return b.size();
  if (b.empty()) return a.size();
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t subst = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, subst});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

inline double length_normalized_similarity(const std::u32string& a,
                                           const std::u32string& b) {
  if (a.empty() && b.empty()) return 1.0;
  const std::size_t longest = std::max(a.size(), b.size());
  return 1.0 - static_cast<double>(levenshtein(a, b)) /
                   static_cast<double>(longest);
}

// Mean of the transliterated-form and normalized-form similarities.
inline double similarity(const NameKey& a, const NameKey& b) {
  return (length_normalized_similarity(a.translit_cps, b.translit_cps) +
          length_normalized_similarity(a.normalized_cps, b.normalized_cps)) /
         2.0;
}

}  // namespace gazetteer
