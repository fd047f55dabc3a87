// Copyright 2026 The Gazetteer Authors
// Licensed under the Apache License, Version 2.0
//
// Multi-pattern entity matcher. Surfaces are compiled into an Aho-Corasick
// automaton over case-folded code points; stored uppercase letters are
// re-verified per hit so lowercase patterns match both cases while uppercase
// patterns stay exact. Text is scanned through a whitespace-collapsed view
// so a single stored space matches any whitespace run.

#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gazetteer/core.hpp"
#include "gazetteer/unicode.hpp"

namespace gazetteer {

struct Match {
  EntityId id = 0;
  std::string main_name;
  std::string surface_found;
  std::size_t offset = 0;
  std::size_t length = 0;

  bool operator==(const Match&) const = default;
};

class CompiledMatcher {
 public:
  struct Payload {
    EntityId id = 0;
    std::uint32_t variant_index = 0;
    std::string main_name;
  };

  struct Pattern {
    std::u32string stored;
    std::string surface;
    std::vector<Payload> payloads;
  };

  std::optional<LanguageScope> built_for;

  const std::vector<Pattern>& patterns() const { return patterns_; }
  std::size_t state_count() const { return fail_.size(); }

  friend CompiledMatcher compile(const Repository&,
                                 const std::optional<LanguageScope>&);
  friend std::vector<Match> find_all(const CompiledMatcher&, std::string_view);

 private:
  static constexpr std::int32_t kRoot = 0;

  std::vector<Pattern> patterns_;
  std::unordered_map<std::string, std::uint32_t> by_surface_;
  std::unordered_map<std::uint64_t, std::int32_t> edges_;
  std::vector<std::vector<std::pair<char32_t, std::int32_t>>> children_;
  std::vector<std::int32_t> fail_;
  std::vector<std::int32_t> out_link_;
  std::vector<std::vector<std::uint32_t>> out_patterns_;

  static std::uint64_t edge_key(std::int32_t node, char32_t cp) {
    return (static_cast<std::uint64_t>(node) << 21) |
           static_cast<std::uint64_t>(cp);
  }

  std::int32_t new_node() {
    fail_.push_back(kRoot);
    out_link_.push_back(kRoot);
    out_patterns_.emplace_back();
    children_.emplace_back();
    return static_cast<std::int32_t>(fail_.size() - 1);
  }

  std::int32_t child(std::int32_t node, char32_t cp) const {
    const auto it = edges_.find(edge_key(node, cp));
    return it == edges_.end() ? -1 : it->second;
  }

  void insert(const std::string& surface, const Payload& payload) {
    const auto known = by_surface_.find(surface);
    if (known != by_surface_.end()) {
      patterns_[known->second].payloads.push_back(payload);
      return;
    }
    Pattern p;
    p.stored = utf8_decode(surface);
    p.surface = surface;
    p.payloads.push_back(payload);
    const auto pid = static_cast<std::uint32_t>(patterns_.size());
    const std::u32string stored = p.stored;
    patterns_.push_back(std::move(p));
    by_surface_.emplace(surface, pid);

    std::int32_t node = kRoot;
    for (char32_t cp : stored) {
      const char32_t folded = fold_case(cp);
      std::int32_t next = child(node, folded);
      if (next < 0) {
        next = new_node();
        edges_.emplace(edge_key(node, folded), next);
        children_[static_cast<std::size_t>(node)].emplace_back(folded, next);
      }
      node = next;
    }
    out_patterns_[static_cast<std::size_t>(node)].push_back(pid);
  }

  void link() {
    std::deque<std::int32_t> queue;
    for (const auto& [cp, node] : children_[kRoot]) {
      fail_[static_cast<std::size_t>(node)] = kRoot;
      queue.push_back(node);
    }
    while (!queue.empty()) {
      const std::int32_t node = queue.front();
      queue.pop_front();
      for (const auto& [cp, next] : children_[static_cast<std::size_t>(node)]) {
        std::int32_t f = fail_[static_cast<std::size_t>(node)];
        while (f != kRoot && child(f, cp) < 0)
          f = fail_[static_cast<std::size_t>(f)];
        std::int32_t target = child(f, cp);
        if (target < 0 || target == next) target = kRoot;
        fail_[static_cast<std::size_t>(next)] = target;
        const auto t = static_cast<std::size_t>(target);
        out_link_[static_cast<std::size_t>(next)] =
            out_patterns_[t].empty() ? out_link_[t] : target;
        queue.push_back(next);
      }
    }
  }
};

inline CompiledMatcher compile(
    const Repository& repo,
    const std::optional<LanguageScope>& language = std::nullopt) {
  CompiledMatcher m;
  m.built_for = language;
  m.new_node();
  for (const auto& [id, entity] : repo.entities) {
    const std::string main = entity.main().surface;
    for (std::uint32_t vi = 0; vi < entity.variants.size(); ++vi) {
      const NameVariant& v = entity.variants[vi];
      const bool in_scope =
          v.scope.universal() ||
          (language.has_value() && v.scope.code == language->code);
      if (!in_scope) continue;
      m.insert(v.surface, {id, vi, main});
    }
  }
  m.link();
  return m;
}

namespace matchdetail {

// The scan view: whitespace runs collapsed to one space, with a map from
// view positions back to original code-point offsets.
struct CollapsedText {
  std::u32string view;
  std::vector<std::size_t> origin;
};

inline CollapsedText collapse_whitespace(const std::u32string& text) {
  CollapsedText c;
  c.view.reserve(text.size());
  c.origin.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (is_space(text[i])) {
      if (!c.view.empty() && c.view.back() == U' ') continue;
      c.view.push_back(U' ');
    } else {
      c.view.push_back(text[i]);
    }
    c.origin.push_back(i);
  }
  return c;
}

struct RawHit {
  std::size_t start = 0;
  std::size_t end = 0;
  std::uint32_t pattern = 0;
};

inline bool case_ok(const std::u32string& stored, const std::u32string& view,
                    std::size_t start) {
  for (std::size_t i = 0; i < stored.size(); ++i) {
    const char32_t want = stored[i];
    if (is_upper_letter(want) && view[start + i] != want) return false;
  }
  return true;
}

}  // namespace matchdetail

// All non-overlapping matches, leftmost-longest, with offsets and lengths in
// code points of the original text. Distinct entities sharing one surface
// each produce their own Match at the same span.
inline std::vector<Match> find_all(const CompiledMatcher& m,
                                   std::string_view text) {
  std::vector<Match> result;
  if (m.patterns_.empty()) return result;
  const std::u32string original = utf8_decode(text);
  const matchdetail::CollapsedText c =
      matchdetail::collapse_whitespace(original);

  std::vector<matchdetail::RawHit> hits;
  std::int32_t state = CompiledMatcher::kRoot;
  for (std::size_t i = 0; i < c.view.size(); ++i) {
    const char32_t cp = fold_case(c.view[i]);
    while (state != CompiledMatcher::kRoot && m.child(state, cp) < 0)
      state = m.fail_[static_cast<std::size_t>(state)];
    const std::int32_t next = m.child(state, cp);
    state = next < 0 ? CompiledMatcher::kRoot : next;

    for (std::int32_t s = state; s != CompiledMatcher::kRoot;
         s = m.out_link_[static_cast<std::size_t>(s)]) {
      for (std::uint32_t pid : m.out_patterns_[static_cast<std::size_t>(s)]) {
        const CompiledMatcher::Pattern& p = m.patterns_[pid];
        if (p.stored.size() > i + 1) continue;
        const std::size_t start = i + 1 - p.stored.size();
        if (!matchdetail::case_ok(p.stored, c.view, start)) continue;
        const std::size_t ostart = c.origin[start];
        const std::size_t oend = c.origin[i] + 1;
        if (ostart > 0 && is_letter(original[ostart - 1])) continue;
        if (oend < original.size() && is_letter(original[oend])) continue;
        hits.push_back({start, i + 1, pid});
      }
    }
  }

  std::sort(hits.begin(), hits.end(),
            [](const matchdetail::RawHit& a, const matchdetail::RawHit& b) {
              if (a.start != b.start) return a.start < b.start;
              if (a.end != b.end) return a.end > b.end;
              return a.pattern < b.pattern;
            });

  std::size_t cursor = 0;
  std::size_t i = 0;
  while (i < hits.size()) {
    if (hits[i].start < cursor) {
      ++i;
      continue;
    }
    const std::size_t span_start = hits[i].start;
    const std::size_t span_end = hits[i].end;
    while (i < hits.size() && hits[i].start == span_start) {
      if (hits[i].end == span_end) {
        const CompiledMatcher::Pattern& p = m.patterns_[hits[i].pattern];
        const std::size_t ostart = c.origin[span_start];
        const std::size_t olen = c.origin[span_end - 1] + 1 - ostart;
        for (const CompiledMatcher::Payload& payload : p.payloads)
          result.push_back(
              {payload.id, payload.main_name, p.surface, ostart, olen});
      }
      ++i;
    }
    cursor = span_end;
  }
  return result;
}

}  // namespace gazetteer
