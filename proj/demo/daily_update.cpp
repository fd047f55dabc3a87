// Copyright 2026 The Gazetteer Authors
// Licensed under the Apache License, Version 2.0
//
// End-to-end daily refresh: mine candidate names from news text with the
// trigger lexicon, type them with the token classifier, fold them into the
// resource by similarity, and pre-generate inflected variants for the
// languages that need them. Prints a digest; writes back only with --write.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gazetteer/core.hpp"
#include "gazetteer/inflect.hpp"
#include "gazetteer/merge.hpp"
#include "gazetteer/normalize.hpp"
#include "gazetteer/trigger_ner.hpp"
#include "gazetteer/zip.hpp"

using namespace gazetteer;

namespace {

std::string slurp(const std::string& path) { return read_file(path); }

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mine, type, merge and expand names from daily text"};
  std::string resource;
  std::string lexicon = "data/lexicon/en.lex";
  std::string persons = "data/classifier/persons.txt";
  std::string organisations = "data/classifier/organisations.txt";
  std::string extra_rules;
  std::string inflect_rules;
  std::vector<std::string> docs;
  double threshold = 0.94;
  bool write = false;
  app.add_option("resource", resource, "resource file (text or zip)")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("docs", docs, "news text files")->required();
  app.add_option("--lexicon", lexicon, "trigger lexicon");
  app.add_option("--persons", persons, "person training names");
  app.add_option("--organisations", organisations, "organisation training names");
  app.add_option("--rules", extra_rules, "extra normalization rules");
  app.add_option("--inflect", inflect_rules, "inflection rules to pre-expand");
  app.add_option("--threshold", threshold, "merge threshold")
      ->check(CLI::Range(0.5, 1.0));
  app.add_flag("--write", write, "save the updated resource");
  CLI11_PARSE(app, argc, argv);

  std::string bytes = slurp(resource);
  const bool zipped = looks_like_zip(bytes);
  std::string member = "names.txt";
  if (zipped) {
    ZipMember m = zip_read_first(bytes);
    member = m.name;
    bytes = m.data;
  }
  Repository repo = parse_resource(bytes);

  const TriggerLexicon lex = parse_trigger_lexicon(slurp(lexicon));
  const TypeModel model =
      train_type_model(lines_of(slurp(persons)), lines_of(slurp(organisations)));

  std::vector<CandidateName> candidates;
  for (const std::string& doc : docs) {
    for (CandidateName c : find_candidates(slurp(doc), lex)) {
      const TypeGuess g = guess_type(c.surface, lex, model);
      c.guessed_type = g.type;
      candidates.push_back(std::move(c));
    }
  }

  NormalizationRuleSet rules = NormalizationRuleSet::default_set();
  if (!extra_rules.empty()) rules.load_extra(slurp(extra_rules));
  TransliterationTable table;

  MergerConfig cfg;
  cfg.threshold = threshold;
  const MergeReport report = merge_batch(repo, candidates, cfg, table, rules);

  std::size_t expanded = 0;
  if (!inflect_rules.empty()) {
    const InflectionRuleSet inflect = parse_inflection_rules(slurp(inflect_rules));
    for (auto& [id, rec] : repo.entities) {
      const std::vector<NameVariant> bases = rec.variants;
      for (const NameVariant& v : bases) {
        if ((v.flags & kFrequencyEligible) == 0) continue;
        if (!v.scope.admits(inflect.language.code)) continue;
        for (const std::string& form :
             expand_inflections(v, inflect).enumerated) {
          if (form == v.surface) continue;
          bool dup = false;
          for (const NameVariant& w : rec.variants)
            dup = dup || (w.surface == form &&
                          w.scope.code == inflect.language.code);
          if (dup) continue;
          rec.variants.push_back({form, inflect.language, 0});
          ++expanded;
        }
      }
    }
  }

  std::cout << "docs=" << docs.size() << " candidates=" << candidates.size()
            << " merged=" << report.merged.size()
            << " created=" << report.created.size()
            << " skipped=" << report.skipped.size()
            << " inflected=" << expanded << "\n";
  for (const auto& m : report.merged)
    std::cout << "  = " << m.surface << " -> #" << m.entity << "\n";
  for (const auto& c : report.created)
    std::cout << "  + " << c.surface << " -> #" << c.entity << "\n";

  if (write) {
    const std::string text = serialize_resource(repo);
    write_file_atomic(resource, zipped ? zip_write_single(member, text) : text);
    std::cout << "saved " << resource << "\n";
  }
  return 0;
}
