// Copyright 2026 The Gazetteer Authors
// Licensed under the Apache License, Version 2.0
//
// Variant-or-new-entity resolution: candidates are blocked by consonant
// signature, scored against stored variants, and merged when the score
// clears the threshold.

#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gazetteer/core.hpp"
#include "gazetteer/normalize.hpp"

namespace gazetteer {

struct MergerConfig {
  double threshold = 0.94;
  bool treat_equal_as_merge = true;
};

struct CandidateName {
  std::string surface;
  LanguageScope language;
  EntityType guessed_type = EntityType::Person;
  std::string evidence;
  std::uint64_t cluster_count = 0;
};

struct MergeReport {
  struct MergedEntry {
    std::string surface;
    EntityId entity = 0;
    double score = 0.0;
  };
  struct CreatedEntry {
    std::string surface;
    EntityId entity = 0;
  };
  struct SkippedEntry {
    std::string surface;
    std::string reason;
  };

  std::vector<MergedEntry> merged;
  std::vector<CreatedEntry> created;
  std::vector<SkippedEntry> skipped;
};

class SignatureMismatch : public std::runtime_error {
 public:
  SignatureMismatch(const std::string& a, const std::string& b)
      : std::runtime_error("signature mismatch: \"" + a + "\" vs \"" + b +
                           "\"") {}
};

struct MergeDecision {
  bool merge = false;
  double score = 0.0;
};

inline MergeDecision merge_decision(const NameKey& a, const NameKey& b,
                                    const MergerConfig& cfg) {
  if (a.signature != b.signature)
    throw SignatureMismatch(a.signature, b.signature);
  MergeDecision d;
  d.score = similarity(a, b);
  d.merge = cfg.treat_equal_as_merge ? d.score >= cfg.threshold
                                     : d.score > cfg.threshold;
  return d;
}

struct SignatureBlock {
  std::vector<NameKey> candidates;
  std::vector<std::pair<EntityId, NameKey>> existing;
};

// Buckets candidates and stored variants by signature. Only buckets holding
// at least one candidate are returned; stored variants appear in id order.
inline std::map<std::string, SignatureBlock> block_by_signature(
    const std::vector<CandidateName>& candidates, const Repository& repo,
    const TransliterationTable& table, const NormalizationRuleSet& rules) {
  std::map<std::string, SignatureBlock> blocks;
  for (const CandidateName& c : candidates) {
    NameKey k = make_key(c.surface, table, rules);
    blocks[k.signature].candidates.push_back(std::move(k));
  }
  for (const auto& [id, entity] : repo.entities) {
    for (const NameVariant& v : entity.variants) {
      NameKey k = make_key(v.surface, table, rules);
      auto it = blocks.find(k.signature);
      if (it == blocks.end()) continue;
      it->second.existing.emplace_back(id, std::move(k));
    }
  }
  return blocks;
}

// Resolves each candidate in input order. A candidate that clears the
// threshold against any variant in its signature bucket joins the
// highest-scoring entity (lowest id on ties); otherwise it founds a new
// entity. Resolved candidates become matchable for the rest of the batch.
inline MergeReport merge_batch(Repository& repo,
                               const std::vector<CandidateName>& candidates,
                               const MergerConfig& cfg,
                               const TransliterationTable& table,
                               const NormalizationRuleSet& rules) {
  MergeReport report;
  std::unordered_map<std::string, std::vector<std::pair<EntityId, NameKey>>>
      index;
  for (const auto& [id, entity] : repo.entities) {
    for (const NameVariant& v : entity.variants) {
      NameKey k = make_key(v.surface, table, rules);
      index[k.signature].emplace_back(id, std::move(k));
    }
  }

  for (const CandidateName& c : candidates) {
    if (!valid_surface(c.surface)) {
      report.skipped.push_back({c.surface, "invalid surface form"});
      continue;
    }
    NameKey key = make_key(c.surface, table, rules);

    bool found = false;
    double best_score = 0.0;
    EntityId best_id = 0;
    auto bucket = index.find(key.signature);
    if (bucket != index.end()) {
      for (const auto& [id, stored] : bucket->second) {
        const MergeDecision d = merge_decision(key, stored, cfg);
        if (!d.merge) continue;
        if (!found || d.score > best_score ||
            (d.score == best_score && id < best_id)) {
          found = true;
          best_score = d.score;
          best_id = id;
        }
      }
    }

    if (found) {
      EntityRecord& entity = repo.entities.at(best_id);
      bool already_stored = false;
      for (const NameVariant& v : entity.variants) {
        if (v.surface == c.surface && v.scope.code == c.language.code) {
          already_stored = true;
          break;
        }
      }
      if (!already_stored) {
        entity.variants.push_back({c.surface, c.language, 0});
        index[key.signature].emplace_back(best_id, std::move(key));
      }
      report.merged.push_back({c.surface, best_id, best_score});
    } else {
      const EntityId id = repo.allocate_id();
      EntityRecord entity;
      entity.id = id;
      entity.etype = c.guessed_type;
      entity.variants.push_back({c.surface, c.language, 0});
      repo.entities.emplace(id, std::move(entity));
      index[key.signature].emplace_back(id, std::move(key));
      report.created.push_back({c.surface, id});
    }
  }
  return report;
}

}  // namespace gazetteer
