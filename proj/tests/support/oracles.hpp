// Copyright 2026 The Gazetteer Authors
// Licensed under the Apache License, Version 2.0
//
// Reference implementations kept deliberately naive and separate from the
// library: a full-matrix edit distance, a position-by-position scanner, and
// an all-pairs merge that skips signature blocking. Tests compare library
// output against these.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gazetteer/core.hpp"
#include "gazetteer/match.hpp"
#include "gazetteer/merge.hpp"
#include "gazetteer/normalize.hpp"
#include "gazetteer/unicode.hpp"

namespace oracles {

inline std::size_t lev_matrix(const std::u32string& a, const std::u32string& b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<std::vector<std::size_t>> d(n + 1, std::vector<std::size_t>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + cost});
    }
  }
  return d[n][m];
}

// Tries one stored pattern at one position of the original text, applying
// the case contract and whitespace flexibility directly. Returns the number
// of text code points consumed, or 0 on failure.
inline std::size_t try_at(const std::u32string& text, std::size_t pos,
                          const std::u32string& stored) {
  std::size_t t = pos;
  for (std::size_t p = 0; p < stored.size(); ++p) {
    const char32_t want = stored[p];
    if (want == U' ') {
      if (t >= text.size() || !gazetteer::is_space(text[t])) return 0;
      while (t < text.size() && gazetteer::is_space(text[t])) ++t;
      continue;
    }
    if (t >= text.size()) return 0;
    const char32_t have = text[t];
    if (gazetteer::is_upper_letter(want)) {
      if (have != want) return 0;
    } else if (gazetteer::fold_case(have) != gazetteer::fold_case(want)) {
      return 0;
    }
    ++t;
  }
  if (pos > 0 && gazetteer::is_letter(text[pos - 1])) return 0;
  if (t < text.size() && gazetteer::is_letter(text[t])) return 0;
  return t - pos;
}

// Position-by-position reference scanner: every variant at every position,
// leftmost-longest overlap resolution, same output discipline as find_all.
inline std::vector<gazetteer::Match> naive_find_all(
    const gazetteer::Repository& repo,
    const std::optional<gazetteer::LanguageScope>& language,
    std::string_view text_utf8) {
  struct Pat {
    std::u32string stored;
    std::string surface;
    std::vector<std::pair<gazetteer::EntityId, std::string>> payloads;
  };
  std::vector<Pat> pats;
  std::map<std::string, std::size_t> by_surface;
  for (const auto& [id, rec] : repo.entities) {
    const std::string main = rec.main().surface;
    for (const gazetteer::NameVariant& v : rec.variants) {
      const bool in_scope =
          v.scope.universal() ||
          (language.has_value() && v.scope.code == language->code);
      if (!in_scope) continue;
      auto it = by_surface.find(v.surface);
      if (it == by_surface.end()) {
        by_surface.emplace(v.surface, pats.size());
        pats.push_back({gazetteer::utf8_decode(v.surface), v.surface, {}});
        it = by_surface.find(v.surface);
      }
      pats[it->second].payloads.emplace_back(id, main);
    }
  }

  const std::u32string text = gazetteer::utf8_decode(text_utf8);
  std::vector<gazetteer::Match> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t best_len = 0;
    std::vector<std::size_t> best_pats;
    for (std::size_t pi = 0; pi < pats.size(); ++pi) {
      const std::size_t len = try_at(text, pos, pats[pi].stored);
      if (len == 0) continue;
      if (len > best_len) {
        best_len = len;
        best_pats.clear();
      }
      if (len == best_len) best_pats.push_back(pi);
    }
    if (best_len == 0) {
      ++pos;
      continue;
    }
    for (std::size_t pi : best_pats) {
      for (const auto& [id, main] : pats[pi].payloads)
        out.push_back({id, main, pats[pi].surface, pos, best_len});
    }
    pos += best_len;
  }
  return out;
}

// Merge resolution without blocking: every candidate scored against every
// stored variant. Mirrors the decision, tie-break and chaining contract.
inline gazetteer::MergeReport merge_all_pairs(
    gazetteer::Repository& repo,
    const std::vector<gazetteer::CandidateName>& candidates,
    const gazetteer::MergerConfig& cfg,
    const gazetteer::TransliterationTable& table,
    const gazetteer::NormalizationRuleSet& rules) {
  using namespace gazetteer;
  MergeReport report;
  std::vector<std::pair<EntityId, NameKey>> stored;
  for (const auto& [id, rec] : repo.entities)
    for (const NameVariant& v : rec.variants)
      stored.emplace_back(id, make_key(v.surface, table, rules));

  for (const CandidateName& c : candidates) {
    if (!valid_surface(c.surface)) {
      report.skipped.push_back({c.surface, "invalid surface form"});
      continue;
    }
    const NameKey key = make_key(c.surface, table, rules);
    bool found = false;
    double best_score = 0.0;
    EntityId best_id = 0;
    for (const auto& [id, k] : stored) {
      const double score = similarity(key, k);
      const bool merge =
          cfg.treat_equal_as_merge ? score >= cfg.threshold : score > cfg.threshold;
      if (!merge) continue;
      if (!found || score > best_score ||
          (score == best_score && id < best_id)) {
        found = true;
        best_score = score;
        best_id = id;
      }
    }
    if (found) {
      EntityRecord& rec = repo.entities.at(best_id);
      bool dup = false;
      for (const NameVariant& v : rec.variants)
        if (v.surface == c.surface && v.scope.code == c.language.code) dup = true;
      if (!dup) {
        rec.variants.push_back({c.surface, c.language, 0});
        stored.emplace_back(best_id, key);
      }
      report.merged.push_back({c.surface, best_id, best_score});
    } else {
      const EntityId id = repo.allocate_id();
      EntityRecord rec;
      rec.id = id;
      rec.etype = c.guessed_type;
      rec.variants.push_back({c.surface, c.language, 0});
      repo.entities.emplace(id, std::move(rec));
      stored.emplace_back(id, key);
      report.created.push_back({c.surface, id});
    }
  }
  return report;
}

}  // namespace oracles
