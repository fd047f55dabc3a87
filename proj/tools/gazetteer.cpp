// Copyright 2026 The Gazetteer Authors
// Licensed under the Apache License, Version 2.0
//
// Operator CLI: compile, match, merge, expand, moderate, export, stats.
// Resource files may be plain text or zip archives holding one member;
// whatever shape came in goes back out, always via temp-file-plus-rename.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gazetteer/core.hpp"
#include "gazetteer/inflect.hpp"
#include "gazetteer/match.hpp"
#include "gazetteer/merge.hpp"
#include "gazetteer/normalize.hpp"
#include "gazetteer/trigger_ner.hpp"
#include "gazetteer/unicode.hpp"
#include "gazetteer/zip.hpp"

namespace {

using namespace gazetteer;

struct LoadedResource {
  Repository repo;
  bool zipped = false;
  std::string member = "names.txt";
  std::filesystem::path path;
  bool had_sidecar = false;
};

std::filesystem::path sidecar_path(const std::filesystem::path& p) {
  std::filesystem::path s = p;
  s += ".flags";
  return s;
}

LoadedResource load_resource(const std::filesystem::path& path) {
  LoadedResource r;
  r.path = path;
  std::string bytes = read_file(path);
  if (looks_like_zip(bytes)) {
    ZipMember m = zip_read_first(bytes);
    r.zipped = true;
    r.member = m.name;
    r.repo = parse_resource(m.data);
  } else {
    r.repo = parse_resource(bytes);
  }
  const std::filesystem::path flags = sidecar_path(path);
  if (std::filesystem::exists(flags)) {
    r.had_sidecar = true;
    apply_flags_sidecar(r.repo, read_file(flags));
  }
  return r;
}

void save_resource(const LoadedResource& r) {
  const std::string text = serialize_resource(r.repo);
  if (r.zipped) {
    write_file_atomic(r.path, zip_write_single(r.member, text));
  } else {
    write_file_atomic(r.path, text);
  }
  const std::string flags = serialize_flags_sidecar(r.repo);
  if (!flags.empty() || r.had_sidecar)
    write_file_atomic(sidecar_path(r.path), flags);
}

NormalizationRuleSet load_rules(const std::string& rules_path) {
  NormalizationRuleSet rules = NormalizationRuleSet::default_set();
  if (!rules_path.empty()) rules.load_extra(read_file(rules_path));
  return rules;
}

TransliterationTable load_translit(const std::vector<std::string>& paths) {
  TransliterationTable table;
  for (const std::string& p : paths) table.load(read_file(p));
  return table;
}

std::optional<LanguageScope> scope_of(const std::string& lang) {
  if (lang.empty()) return std::nullopt;
  return LanguageScope{lang};
}

bool check_lang(const std::string& lang) {
  if (lang.empty() || LanguageScope::valid(lang)) return true;
  std::cerr << "invalid language '" << lang << "' (want a 2-letter code or u)\n";
  return false;
}

void print_match(const std::string& format, const std::string& doc,
                 const Match& m) {
  if (format == "json-lines") {
    nlohmann::json j{{"doc", doc},           {"offset", m.offset},
                     {"length", m.length},   {"entity", m.id},
                     {"main", m.main_name},  {"surface", m.surface_found}};
    std::cout << j.dump() << "\n";
    return;
  }
  std::cout << doc << '\t' << m.offset << '\t' << m.length << '\t' << m.id
            << '\t' << plus_encode(m.main_name) << '\t'
            << plus_encode(m.surface_found) << "\n";
}

int cmd_compile(const std::string& resource, const std::string& lang) {
  if (!check_lang(lang)) return 1;
  const LoadedResource r = load_resource(resource);
  std::size_t variants = 0;
  for (const auto& [id, rec] : r.repo.entities) variants += rec.variants.size();
  const CompiledMatcher m = compile(r.repo, scope_of(lang));
  std::cout << "entities=" << r.repo.entities.size() << " variants=" << variants
            << " states=" << m.state_count() << "\n";
  return 0;
}

int cmd_match(const std::string& resource, const std::string& lang,
              const std::string& format, const std::vector<std::string>& docs) {
  if (!check_lang(lang)) return 1;
  const LoadedResource r = load_resource(resource);
  const CompiledMatcher m = compile(r.repo, scope_of(lang));
  if (docs.empty()) {
    std::string all(std::istreambuf_iterator<char>(std::cin), {});
    std::size_t doc_no = 0;
    std::size_t pos = 0;
    while (pos <= all.size()) {
      std::size_t end = all.find('\0', pos);
      if (end == std::string::npos) end = all.size();
      const std::string_view doc(all.data() + pos, end - pos);
      const std::string doc_id = "stdin:" + std::to_string(doc_no++);
      for (const Match& match : find_all(m, doc))
        print_match(format, doc_id, match);
      if (end == all.size()) break;
      pos = end + 1;
    }
    return 0;
  }
  for (const std::string& path : docs) {
    const std::string text = read_file(path);
    for (const Match& match : find_all(m, text)) print_match(format, path, match);
  }
  return 0;
}

struct CandidateFile {
  std::vector<CandidateName> candidates;
  std::vector<std::pair<std::string, std::string>> skipped;
};

CandidateFile parse_candidates(std::string_view text) {
  CandidateFile f;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto bad = [&](const char* why) {
      f.skipped.emplace_back(std::string(line),
                             std::string(why) + " at line " +
                                 std::to_string(line_no));
    };
    const auto cols = detail::split_tabs(line);
    if (cols.size() != 4) {
      bad("expected 4 columns");
      continue;
    }
    CandidateName c;
    c.surface = plus_decode(cols[0]);
    if (!LanguageScope::valid(cols[1])) {
      bad("bad language");
      continue;
    }
    c.language.code = std::string(cols[1]);
    if (cols[2] == "P") {
      c.guessed_type = EntityType::Person;
    } else if (cols[2] == "O") {
      c.guessed_type = EntityType::Organisation;
    } else {
      bad("bad type guess");
      continue;
    }
    c.cluster_count = 0;
    bool digits = !cols[3].empty();
    for (char ch : cols[3]) digits = digits && ch >= '0' && ch <= '9';
    if (!digits) {
      bad("bad cluster count");
      continue;
    }
    for (char ch : cols[3])
      c.cluster_count = c.cluster_count * 10 + static_cast<std::uint64_t>(ch - '0');
    f.candidates.push_back(std::move(c));
  }
  return f;
}

int cmd_merge(const std::string& resource, const std::string& candidates_path,
              double threshold, const std::string& rules_path,
              const std::vector<std::string>& translit_paths,
              const std::string& lexicon_path, const std::string& format) {
  LoadedResource r = load_resource(resource);
  CandidateFile f = parse_candidates(read_file(candidates_path));
  if (!lexicon_path.empty()) {
    // Organisation words in the lexicon override the file's type guess.
    const TriggerLexicon lex = parse_trigger_lexicon(read_file(lexicon_path));
    for (CandidateName& c : f.candidates) {
      std::string low = triggerdetail::lower_ascii(c.surface);
      std::size_t start = 0;
      while (start <= low.size()) {
        std::size_t end = low.find(' ', start);
        if (end == std::string::npos) end = low.size();
        if (end > start && lex.org_words.count(low.substr(start, end - start)) > 0) {
          c.guessed_type = EntityType::Organisation;
          break;
        }
        start = end + 1;
      }
    }
  }
  MergerConfig cfg;
  cfg.threshold = threshold;
  const NormalizationRuleSet rules = load_rules(rules_path);
  const TransliterationTable table = load_translit(translit_paths);
  const MergeReport report = merge_batch(r.repo, f.candidates, cfg, table, rules);
  save_resource(r);

  char score[32];
  for (const auto& e : report.merged) {
    std::snprintf(score, sizeof score, "%.4f", e.score);
    if (format == "json-lines") {
      nlohmann::json j{{"decision", "merged"},
                       {"surface", e.surface},
                       {"entity", e.entity},
                       {"score", std::string(score)}};
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "MERGED\t" << plus_encode(e.surface) << '\t' << e.entity
                << '\t' << score << "\n";
    }
  }
  for (const auto& e : report.created) {
    if (format == "json-lines") {
      nlohmann::json j{{"decision", "created"},
                       {"surface", e.surface},
                       {"entity", e.entity}};
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "CREATED\t" << plus_encode(e.surface) << '\t' << e.entity
                << "\n";
    }
  }
  auto print_skip = [&](const std::string& surface, const std::string& reason) {
    if (format == "json-lines") {
      nlohmann::json j{{"decision", "skipped"},
                       {"surface", surface},
                       {"reason", reason}};
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "SKIPPED\t" << plus_encode(surface) << '\t' << reason
                << "\n";
    }
  };
  for (const auto& e : report.skipped) print_skip(e.surface, e.reason);
  for (const auto& [line, reason] : f.skipped) print_skip(line, reason);
  return 0;
}

int cmd_expand(const std::string& resource, const std::string& rules_path,
               bool pattern_only, bool assume_eligible) {
  LoadedResource r = load_resource(resource);
  const InflectionRuleSet rules = parse_inflection_rules(read_file(rules_path));

  std::size_t expanded = 0;
  std::size_t added = 0;
  for (auto& [id, rec] : r.repo.entities) {
    const std::size_t original_count = rec.variants.size();
    for (std::size_t vi = 0; vi < original_count; ++vi) {
      const NameVariant base = rec.variants[vi];
      const bool eligible =
          assume_eligible || (base.flags & kFrequencyEligible) != 0;
      if (!eligible) continue;
      const VariantExpansion x = expand_inflections(base, rules);
      ++expanded;
      if (pattern_only) {
        std::cout << id << '\t' << x.pattern << "\n";
        continue;
      }
      for (const std::string& form : x.enumerated) {
        if (form == base.surface) continue;
        bool dup = false;
        for (const NameVariant& v : rec.variants) {
          if (v.surface == form && v.scope == rules.language) {
            dup = true;
            break;
          }
        }
        if (dup) continue;
        rec.variants.push_back({form, rules.language, 0});
        ++added;
      }
    }
  }
  if (pattern_only) return 0;
  save_resource(r);
  std::cout << "expanded=" << expanded << " added=" << added << "\n";
  return 0;
}

int cmd_moderate(const std::string& resource, const std::string& edits_path) {
  LoadedResource r = load_resource(resource);
  const std::string text = read_file(edits_path);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  std::size_t applied = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    const std::string_view line = std::string_view(text).substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    try {
      for (const ModerationEdit& e : parse_edit_log(line)) {
        apply_edit(r.repo, e);
        ++applied;
      }
    } catch (const EditError& err) {
      std::cerr << "edit failed at line " << line_no << ": " << err.what()
                << "\n";
      return 1;
    }
  }
  save_resource(r);
  std::cout << "applied=" << applied << "\n";
  return 0;
}

int cmd_export(const std::string& resource, const std::string& lang,
               const std::string& format) {
  if (!check_lang(lang)) return 1;
  const LoadedResource r = load_resource(resource);
  const std::string* filter = lang.empty() ? nullptr : &lang;
  for (const auto& [id, etype, scope, surface] : export_variants(r.repo, filter)) {
    if (format == "json-lines") {
      nlohmann::json j{{"entity", id},
                       {"type", std::string(1, type_code(etype))},
                       {"scope", scope.code},
                       {"surface", surface}};
      std::cout << j.dump() << "\n";
    } else {
      std::cout << id << '\t' << type_code(etype) << '\t' << scope.code << '\t'
                << plus_encode(surface) << "\n";
    }
  }
  return 0;
}

int cmd_stats(const std::string& resource) {
  const LoadedResource r = load_resource(resource);
  std::size_t variants = 0;
  std::map<char, std::pair<std::size_t, std::size_t>> by_type;
  std::map<std::string, std::size_t> by_scope;
  std::map<std::string, std::size_t> by_script;
  std::map<std::size_t, std::size_t> histogram;
  for (const auto& [id, rec] : r.repo.entities) {
    variants += rec.variants.size();
    auto& t = by_type[type_code(rec.etype)];
    t.first += 1;
    t.second += rec.variants.size();
    histogram[rec.variants.size()] += 1;
    for (const NameVariant& v : rec.variants) {
      by_scope[v.scope.code] += 1;
      const std::u32string cps = utf8_decode(v.surface);
      const char* script = "Other";
      for (char32_t cp : cps) {
        if (!is_letter(cp)) continue;
        switch (script_of(cp)) {
          case Script::Latin: script = "Latin"; break;
          case Script::Greek: script = "Greek"; break;
          case Script::Cyrillic: script = "Cyrillic"; break;
          case Script::Other: script = "Other"; break;
        }
        break;
      }
      by_script[script] += 1;
    }
  }
  std::cout << "entities=" << r.repo.entities.size() << " variants=" << variants
            << "\n";
  for (const auto& [code, counts] : by_type)
    std::cout << "type " << code << ": entities=" << counts.first
              << " variants=" << counts.second << "\n";
  for (const auto& [scope, count] : by_scope)
    std::cout << "scope " << scope << ": variants=" << count << "\n";
  for (const auto& [script, count] : by_script)
    std::cout << "script " << script << ": variants=" << count << "\n";
  std::cout << "variants-per-entity:";
  for (const auto& [size, count] : histogram)
    std::cout << " " << size << ":" << count;
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multilingual name gazetteer toolkit"};
  app.require_subcommand(1);

  std::string resource;
  std::string lang;
  std::string format = "tsv";
  std::string rules_path;
  std::string lexicon_path;
  std::vector<std::string> translit_paths;
  std::string candidates_path;
  std::string edits_path;
  std::vector<std::string> docs;
  double threshold = 0.94;
  bool pattern_only = false;
  bool assume_eligible = false;

  const auto add_common = [&](CLI::App* sub, bool needs_resource = true) {
    auto* opt = sub->add_option("--resource", resource, "resource file (text or zip)");
    if (needs_resource) opt->required();
  };

  CLI::App* compile_cmd = app.add_subcommand("compile", "parse a resource and report matcher stats");
  add_common(compile_cmd);
  compile_cmd->add_option("--lang", lang, "language build (2-letter code)");

  CLI::App* match_cmd = app.add_subcommand("match", "annotate documents with known entities");
  add_common(match_cmd);
  match_cmd->add_option("--lang", lang, "language build (2-letter code)");
  match_cmd->add_option("--format", format, "tsv or json-lines")
      ->check(CLI::IsMember({"tsv", "json-lines"}));
  match_cmd->add_option("files", docs, "documents (stdin when absent, NUL-separated)");

  CLI::App* merge_cmd = app.add_subcommand("merge", "resolve candidate names into the repository");
  add_common(merge_cmd);
  merge_cmd->add_option("--candidates", candidates_path, "candidate file")->required();
  merge_cmd->add_option("--threshold", threshold, "similarity threshold")
      ->check(CLI::Range(std::nextafter(0.0, 1.0), 1.0));
  merge_cmd->add_option("--rules", rules_path, "extra normalization rule file");
  merge_cmd->add_option("--translit", translit_paths, "transliteration table file(s)");
  merge_cmd->add_option("--lexicon", lexicon_path,
                        "trigger lexicon; its org words override type guesses");
  merge_cmd->add_option("--format", format, "tsv or json-lines")
      ->check(CLI::IsMember({"tsv", "json-lines"}));

  CLI::App* expand_cmd = app.add_subcommand("expand", "pre-generate inflected variants");
  add_common(expand_cmd);
  expand_cmd->add_option("--rules", rules_path, "inflection rule file")->required();
  expand_cmd->add_flag("--pattern-only", pattern_only, "print patterns, do not modify");
  expand_cmd->add_flag("--assume-eligible", assume_eligible,
                       "expand every variant, not only frequency-eligible ones");

  CLI::App* moderate_cmd = app.add_subcommand("moderate", "apply a moderation edit log");
  add_common(moderate_cmd);
  moderate_cmd->add_option("--edits", edits_path, "edit log file")->required();

  CLI::App* export_cmd = app.add_subcommand("export", "list variants");
  add_common(export_cmd);
  export_cmd->add_option("--lang", lang, "only variants visible to this language");
  export_cmd->add_option("--format", format, "tsv or json-lines")
      ->check(CLI::IsMember({"tsv", "json-lines"}));

  CLI::App* stats_cmd = app.add_subcommand("stats", "per-type, per-scope and per-script counts");
  add_common(stats_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (compile_cmd->parsed()) return cmd_compile(resource, lang);
    if (match_cmd->parsed()) return cmd_match(resource, lang, format, docs);
    if (merge_cmd->parsed())
      return cmd_merge(resource, candidates_path, threshold, rules_path,
                       translit_paths, lexicon_path, format);
    if (expand_cmd->parsed())
      return cmd_expand(resource, rules_path, pattern_only, assume_eligible);
    if (moderate_cmd->parsed()) return cmd_moderate(resource, edits_path);
    if (export_cmd->parsed()) return cmd_export(resource, lang, format);
    if (stats_cmd->parsed()) return cmd_stats(resource);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
