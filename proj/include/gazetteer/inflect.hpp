// Copyright 2026 The Gazetteer Authors
// Licensed under the Apache License, Version 2.0
//
// Morphological pre-generation: per-language suffix alternations expand a
// name into a regex pattern and an enumerated variant list, and spelling
// transforms (hyphen/space, particle dropping) produce surface variants.

#pragma once

#include <algorithm>
#include <cctype>
#include <cstring>
#include <regex>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gazetteer/core.hpp"
#include "gazetteer/normalize.hpp"

namespace gazetteer {

struct InflectionRuleSet {
  LanguageScope language;
  std::vector<std::string> suffixes;
  std::string applies_to;
};

// Rule file: header line `lang <code>`, then one suffix per line; '#' starts
// a comment; an optional `applies-to <regex>` line restricts which tokens
// are suffixed.
inline InflectionRuleSet parse_inflection_rules(std::string_view text) {
  InflectionRuleSet rs;
  bool have_lang = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
      line.remove_prefix(1);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t'))
      line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (line.rfind("lang ", 0) == 0) {
      rs.language.code = std::string(line.substr(5));
      have_lang = true;
      continue;
    }
    if (line.rfind("applies-to ", 0) == 0) {
      rs.applies_to = std::string(line.substr(11));
      continue;
    }
    const std::string suffix(line);
    if (std::find(rs.suffixes.begin(), rs.suffixes.end(), suffix) ==
        rs.suffixes.end())
      rs.suffixes.push_back(suffix);
  }
  if (!have_lang || !LanguageScope::valid(rs.language.code))
    throw std::runtime_error("inflection rule file needs a `lang <code>` header");
  return rs;
}

struct VariantExpansion {
  NameVariant base;
  std::string pattern;
  std::vector<std::string> enumerated;
};

namespace inflectdetail {

inline std::vector<std::string> split_tokens(std::string_view surface) {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (start <= surface.size()) {
    std::size_t end = surface.find(' ', start);
    if (end == std::string_view::npos) end = surface.size();
    if (end > start) tokens.emplace_back(surface.substr(start, end - start));
    start = end + 1;
  }
  return tokens;
}

inline std::string regex_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    const bool meta = std::strchr("\\^$.|?*+()[]{}", c) != nullptr;
    if (meta) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

inline bool token_applies(const std::string& token,
                          const InflectionRuleSet& rules) {
  if (rules.applies_to.empty()) return true;
  return std::regex_match(token, std::regex(rules.applies_to));
}

}  // namespace inflectdetail

// Builds the alternation pattern and the full per-token cross product. The
// base form is always matchable and always enumerated.
inline VariantExpansion expand_inflections(const NameVariant& name,
                                           const InflectionRuleSet& rules) {
  if (rules.suffixes.empty()) throw EmptyRuleSet();
  VariantExpansion x;
  x.base = name;

  const std::vector<std::string> tokens =
      inflectdetail::split_tokens(name.surface);
  std::vector<std::vector<std::string>> options;
  std::string pattern;
  for (const std::string& token : tokens) {
    if (!pattern.empty()) pattern += "\\s+";
    pattern += inflectdetail::regex_escape(token);

    std::vector<std::string> opts{token};
    if (inflectdetail::token_applies(token, rules)) {
      std::string alternation;
      for (const std::string& suffix : rules.suffixes) {
        if (suffix.empty()) continue;
        const std::string form = token + suffix;
        if (std::find(opts.begin(), opts.end(), form) == opts.end())
          opts.push_back(form);
        if (!alternation.empty()) alternation += "|";
        alternation += inflectdetail::regex_escape(suffix);
      }
      if (!alternation.empty()) pattern += "(" + alternation + ")?";
    }
    options.push_back(std::move(opts));
  }
  x.pattern = pattern;

  std::vector<std::string> acc{""};
  for (std::size_t t = 0; t < options.size(); ++t) {
    std::vector<std::string> next;
    next.reserve(acc.size() * options[t].size());
    for (const std::string& prefix : acc)
      for (const std::string& opt : options[t])
        next.push_back(t == 0 ? opt : prefix + " " + opt);
    acc = std::move(next);
  }
  if (!tokens.empty()) x.enumerated = std::move(acc);
  return x;
}

// Deduplicated closure of hyphen-to-space substitution and token-initial
// "al"/"el" particle removal; the input itself is excluded.
inline std::vector<NameVariant> surface_variants(const NameVariant& name) {
  auto lower_ascii = [](std::string s) {
    for (char& c : s)
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  };
  auto rebuild = [](const std::vector<std::string>& tokens) {
    std::string s;
    for (const std::string& t : tokens) {
      if (t.empty()) continue;
      if (!s.empty()) s += " ";
      s += t;
    }
    return s;
  };
  auto expand_one = [&](const std::string& s) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] != '-') continue;
      std::string t = s;
      t[i] = ' ';
      std::vector<std::string> toks = inflectdetail::split_tokens(t);
      out.push_back(rebuild(toks));
    }
    std::vector<std::string> tokens = inflectdetail::split_tokens(s);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const std::string low = lower_ascii(tokens[i]);
      std::vector<std::string> toks = tokens;
      if (low == "al" || low == "el") {
        toks.erase(toks.begin() + static_cast<std::ptrdiff_t>(i));
      } else if (low.rfind("al-", 0) == 0 || low.rfind("el-", 0) == 0) {
        toks[i] = tokens[i].substr(3);
      } else {
        continue;
      }
      const std::string t = rebuild(toks);
      if (!t.empty()) out.push_back(t);
    }
    return out;
  };

  std::set<std::string> seen{name.surface};
  std::vector<std::string> frontier{name.surface};
  std::vector<NameVariant> result;
  while (!frontier.empty()) {
    std::vector<std::string> next;
    for (const std::string& s : frontier) {
      for (const std::string& t : expand_one(s)) {
        if (!seen.insert(t).second) continue;
        result.push_back({t, name.scope, 0});
        next.push_back(t);
      }
    }
    frontier = std::move(next);
  }
  return result;
}

}  // namespace gazetteer
