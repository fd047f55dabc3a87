// Copyright 2026 The Gazetteer Authors
// Licensed under the Apache License, Version 2.0
//
// Trigger-word candidate recognition and person/organisation type guessing.
// Capitalized spans next to trigger matches become candidates; a small
// Bayes model over token unigrams and character trigrams guesses the type
// when no organisation word settles it outright.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <regex>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gazetteer/core.hpp"
#include "gazetteer/merge.hpp"
#include "gazetteer/unicode.hpp"

namespace gazetteer {

enum class TriggerClass {
  Title,
  Profession,
  CountryAdjective,
  Age,
  VerbPhrase,
  Modifier,
};

struct TriggerPattern {
  TriggerClass cls = TriggerClass::Title;
  bool is_regex = false;
  std::vector<std::string> words;
  std::string raw;
  std::regex re;
};

struct TriggerLexicon {
  LanguageScope language;
  std::vector<TriggerPattern> triggers;
  std::set<std::string> org_words;
  std::set<std::string> stop_words;
};

namespace triggerdetail {

inline std::string lower_ascii(std::string s) {
  for (char& c : s)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return s;
}

inline bool parse_class(std::string_view tag, TriggerClass& out) {
  if (tag == "title") out = TriggerClass::Title;
  else if (tag == "profession") out = TriggerClass::Profession;
  else if (tag == "country-adjective") out = TriggerClass::CountryAdjective;
  else if (tag == "age") out = TriggerClass::Age;
  else if (tag == "verb-phrase") out = TriggerClass::VerbPhrase;
  else if (tag == "modifier") out = TriggerClass::Modifier;
  else return false;
  return true;
}

}  // namespace triggerdetail

// Lexicon file: optional `lang <code>` header, then sections [triggers],
// [org_words], [stop_words]. Trigger lines are `class TAB entry`; an entry
// starting with `re:` is a regular expression over a single token.
inline TriggerLexicon parse_trigger_lexicon(std::string_view text) {
  TriggerLexicon lex;
  enum class Section { None, Triggers, OrgWords, StopWords } section =
      Section::None;
  std::set<std::string> seen_triggers;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (line.rfind("lang ", 0) == 0) {
      lex.language.code = std::string(line.substr(5));
      continue;
    }
    if (line == "[triggers]") { section = Section::Triggers; continue; }
    if (line == "[org_words]") { section = Section::OrgWords; continue; }
    if (line == "[stop_words]") { section = Section::StopWords; continue; }
    switch (section) {
      case Section::None:
        throw std::runtime_error("lexicon line " + std::to_string(line_no) +
                                 ": entry before any section header");
      case Section::Triggers: {
        const std::size_t tab = line.find('\t');
        TriggerClass cls;
        if (tab == std::string_view::npos ||
            !triggerdetail::parse_class(line.substr(0, tab), cls))
          throw std::runtime_error("lexicon line " + std::to_string(line_no) +
                                   ": expected `class<TAB>entry`");
        std::string_view entry = line.substr(tab + 1);
        if (entry.empty()) break;
        if (!seen_triggers.insert(std::string(line)).second) break;
        TriggerPattern p;
        p.cls = cls;
        if (entry.rfind("re:", 0) == 0) {
          p.is_regex = true;
          p.raw = std::string(entry.substr(3));
          p.re = std::regex(p.raw);
        } else {
          p.raw = std::string(entry);
          std::size_t start = 0;
          while (start <= entry.size()) {
            std::size_t end = entry.find(' ', start);
            if (end == std::string_view::npos) end = entry.size();
            if (end > start)
              p.words.push_back(triggerdetail::lower_ascii(
                  std::string(entry.substr(start, end - start))));
            start = end + 1;
          }
        }
        lex.triggers.push_back(std::move(p));
        break;
      }
      case Section::OrgWords:
        lex.org_words.insert(triggerdetail::lower_ascii(std::string(line)));
        break;
      case Section::StopWords:
        lex.stop_words.insert(std::string(line));
        break;
    }
  }
  return lex;
}

namespace triggerdetail {

struct Token {
  std::string core;
  bool capitalized = false;
  bool clause_end = false;
  bool comma_end = false;

  bool span_punct() const { return clause_end || comma_end; }
};

inline std::vector<Token> tokenize(std::string_view text) {
  const std::u32string cps = utf8_decode(text);
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && is_space(cps[i])) ++i;
    if (i >= cps.size()) break;
    std::size_t j = i;
    while (j < cps.size() && !is_space(cps[j])) ++j;
    std::u32string raw = cps.substr(i, j - i);
    i = j;

    auto is_word_cp = [](char32_t cp) {
      return is_letter(cp) || (cp >= U'0' && cp <= U'9') || cp == U'-' ||
             cp == U'\'';
    };
    std::size_t b = 0;
    std::size_t e = raw.size();
    while (b < e && !is_word_cp(raw[b])) ++b;
    bool clause = false;
    bool comma = false;
    while (e > b && !is_word_cp(raw[e - 1])) {
      const char32_t cp = raw[e - 1];
      if (cp == U'.' || cp == U'!' || cp == U'?' || cp == U';' || cp == U':')
        clause = true;
      if (cp == U',') comma = true;
      --e;
    }
    if (e <= b) continue;
    Token t;
    t.core = utf8_encode(raw.substr(b, e - b));
    t.capitalized = is_upper_letter(raw[b]);
    t.clause_end = clause;
    t.comma_end = comma;
    tokens.push_back(std::move(t));
  }
  return tokens;
}

inline bool is_particle(const std::string& core) {
  static const std::set<std::string> kParticles{
      "al", "el", "van", "de", "von", "der", "den", "bin", "ibn",
      "la", "le", "di", "da", "del", "ter", "ten"};
  if (kParticles.count(lower_ascii(core)) > 0) return true;
  const std::string low = lower_ascii(core);
  return low.rfind("al-", 0) == 0 || low.rfind("el-", 0) == 0;
}

struct TriggerBlock {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::set<TriggerClass> classes;
};

inline std::vector<TriggerBlock> find_blocks(const std::vector<Token>& tokens,
                                             const TriggerLexicon& lex) {
  struct Occurrence {
    std::size_t begin, end;
    TriggerClass cls;
  };
  std::vector<Occurrence> occ;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    for (const TriggerPattern& p : lex.triggers) {
      if (p.is_regex) {
        if (std::regex_match(tokens[i].core, p.re))
          occ.push_back({i, i + 1, p.cls});
        continue;
      }
      if (p.words.empty() || i + p.words.size() > tokens.size()) continue;
      bool ok = true;
      for (std::size_t w = 0; w < p.words.size(); ++w) {
        if (lower_ascii(tokens[i + w].core) != p.words[w]) { ok = false; break; }
        if (w + 1 < p.words.size() && tokens[i + w].clause_end) { ok = false; break; }
      }
      if (ok) occ.push_back({i, i + p.words.size(), p.cls});
    }
  }
  std::sort(occ.begin(), occ.end(), [](const Occurrence& a, const Occurrence& b) {
    if (a.begin != b.begin) return a.begin < b.begin;
    return a.end < b.end;
  });
  std::vector<TriggerBlock> blocks;
  for (const Occurrence& o : occ) {
    if (!blocks.empty() && o.begin <= blocks.back().end &&
        !(o.begin == blocks.back().end && o.begin > 0 &&
          tokens[o.begin - 1].span_punct())) {
      blocks.back().end = std::max(blocks.back().end, o.end);
      blocks.back().classes.insert(o.cls);
    } else {
      blocks.push_back({o.begin, o.end, {o.cls}});
    }
  }
  return blocks;
}

}  // namespace triggerdetail

// Scans for 1-4 capitalized tokens (lowercase particles allowed inside)
// adjacent to a trigger block: after title-like blocks, before verb-phrase
// and age blocks. Stop words never enter a span: leading ones are skipped,
// interior ones cut the span short.
inline std::vector<CandidateName> find_candidates(std::string_view text,
                                                  const TriggerLexicon& lex) {
  using triggerdetail::Token;
  const std::vector<Token> tokens = triggerdetail::tokenize(text);
  const std::vector<triggerdetail::TriggerBlock> blocks =
      triggerdetail::find_blocks(tokens, lex);

  std::vector<CandidateName> out;
  std::set<std::pair<std::size_t, std::size_t>> spans_emitted;
  std::vector<char> in_block(tokens.size(), 0);
  for (const triggerdetail::TriggerBlock& b : blocks)
    for (std::size_t i = b.begin; i < b.end; ++i) in_block[i] = 1;

  auto evidence_of = [&](const triggerdetail::TriggerBlock& b) {
    std::string s;
    for (std::size_t i = b.begin; i < b.end; ++i) {
      if (!s.empty()) s += " ";
      s += tokens[i].core;
    }
    return s;
  };
  auto emit = [&](std::size_t begin, std::size_t end,
                  const triggerdetail::TriggerBlock& b) {
    if (begin >= end) return;
    if (!spans_emitted.insert({begin, end}).second) return;
    std::string surface;
    for (std::size_t i = begin; i < end; ++i) {
      if (!surface.empty()) surface += " ";
      surface += tokens[i].core;
    }
    CandidateName c;
    c.surface = std::move(surface);
    c.language = lex.language;
    c.guessed_type = EntityType::Person;
    c.evidence = evidence_of(b);
    out.push_back(std::move(c));
  };

  for (const triggerdetail::TriggerBlock& b : blocks) {
    const bool name_right =
        b.classes.count(TriggerClass::Title) > 0 ||
        b.classes.count(TriggerClass::Profession) > 0 ||
        b.classes.count(TriggerClass::CountryAdjective) > 0 ||
        b.classes.count(TriggerClass::Modifier) > 0 ||
        b.classes.count(TriggerClass::Age) > 0;
    const bool name_left = b.classes.count(TriggerClass::VerbPhrase) > 0 ||
                           b.classes.count(TriggerClass::Age) > 0;

    if (name_right && !tokens[b.end - 1].span_punct()) {
      std::size_t begin = b.end;
      std::size_t end = begin;
      std::size_t caps = 0;
      for (std::size_t j = b.end; j < tokens.size() && caps < 4; ++j) {
        const Token& t = tokens[j];
        if (in_block[j]) break;
        if (caps == 0 && lex.stop_words.count(t.core) > 0 && t.capitalized &&
            !t.span_punct()) {
          begin = j + 1;
          end = begin;
          continue;
        }
        if (lex.stop_words.count(t.core) > 0) break;
        if (t.capitalized && !triggerdetail::is_particle(t.core)) {
          end = j + 1;
          ++caps;
          if (t.span_punct()) break;
          continue;
        }
        if (caps > 0 && triggerdetail::is_particle(t.core) && !t.span_punct())
          continue;
        break;
      }
      emit(begin, end, b);
    }

    if (name_left && b.begin > 0) {
      std::size_t end = b.begin;
      std::size_t begin = end;
      std::size_t caps = 0;
      for (std::size_t j = b.begin; j-- > 0 && caps < 4;) {
        const Token& t = tokens[j];
        if (in_block[j]) break;
        if (t.clause_end) break;
        if (t.comma_end && begin < end) break;
        if (lex.stop_words.count(t.core) > 0) break;
        if (t.capitalized && !triggerdetail::is_particle(t.core)) {
          begin = j;
          ++caps;
          continue;
        }
        if (caps > 0 && triggerdetail::is_particle(t.core)) continue;
        break;
      }
      emit(begin, end, b);
    }
  }
  return out;
}

class UntrainedModel : public std::runtime_error {
 public:
  UntrainedModel() : std::runtime_error("type model has not been trained") {}
};

class EmptyTrainingClass : public std::runtime_error {
 public:
  explicit EmptyTrainingClass(const std::string& which)
      : std::runtime_error("empty training class: " + which) {}
};

struct TypeModel {
  double smoothing = 1.0;
  double prior_person = 0.5;
  double prior_org = 0.5;
  std::unordered_map<std::string, std::uint64_t> person_counts;
  std::unordered_map<std::string, std::uint64_t> org_counts;
  std::uint64_t person_total = 0;
  std::uint64_t org_total = 0;
  std::size_t vocab_size = 0;
  bool trained = false;
};

namespace triggerdetail {

inline std::vector<std::string> features_of(std::string_view surface) {
  std::u32string cps = utf8_decode(surface);
  for (char32_t& cp : cps) cp = to_lower_simple(cp);
  std::vector<std::string> feats;
  std::u32string token;
  for (std::size_t i = 0; i <= cps.size(); ++i) {
    if (i < cps.size() && !is_space(cps[i])) {
      token.push_back(cps[i]);
      continue;
    }
    if (!token.empty()) feats.push_back("t:" + utf8_encode(token));
    token.clear();
  }
  for (std::size_t i = 0; i + 3 <= cps.size(); ++i)
    feats.push_back("g:" + utf8_encode(cps.substr(i, 3)));
  return feats;
}

inline double log_prob(const std::unordered_map<std::string, std::uint64_t>& counts,
                       std::uint64_t total, std::size_t vocab, double k,
                       const std::string& feat) {
  const auto it = counts.find(feat);
  const double num = (it == counts.end() ? 0.0 : static_cast<double>(it->second)) + k;
  const double den = static_cast<double>(total) + k * static_cast<double>(vocab);
  return std::log(num) - std::log(den);
}

}  // namespace triggerdetail

inline TypeModel train_type_model(const std::vector<std::string>& persons,
                                  const std::vector<std::string>& orgs,
                                  double smoothing = 1.0) {
  if (persons.empty()) throw EmptyTrainingClass("persons");
  if (orgs.empty()) throw EmptyTrainingClass("organisations");
  TypeModel m;
  m.smoothing = smoothing;
  std::set<std::string> vocab;
  for (const std::string& name : persons) {
    for (const std::string& f : triggerdetail::features_of(name)) {
      ++m.person_counts[f];
      ++m.person_total;
      vocab.insert(f);
    }
  }
  for (const std::string& name : orgs) {
    for (const std::string& f : triggerdetail::features_of(name)) {
      ++m.org_counts[f];
      ++m.org_total;
      vocab.insert(f);
    }
  }
  m.vocab_size = vocab.size();
  const double total = static_cast<double>(persons.size() + orgs.size());
  m.prior_person = static_cast<double>(persons.size()) / total;
  m.prior_org = static_cast<double>(orgs.size()) / total;
  m.trained = true;
  return m;
}

struct TypeGuess {
  EntityType type = EntityType::Person;
  double score = 0.0;
};

// Organisation words win outright; otherwise the Bayes posterior decides.
inline TypeGuess guess_type(std::string_view surface, const TriggerLexicon& lex,
                            const TypeModel& model) {
  if (!model.trained) throw UntrainedModel();
  std::string low = triggerdetail::lower_ascii(std::string(surface));
  std::size_t start = 0;
  while (start <= low.size()) {
    std::size_t end = low.find(' ', start);
    if (end == std::string::npos) end = low.size();
    if (end > start && lex.org_words.count(low.substr(start, end - start)) > 0)
      return {EntityType::Organisation, 1.0};
    start = end + 1;
  }

  double lp = std::log(model.prior_person);
  double lo = std::log(model.prior_org);
  for (const std::string& f : triggerdetail::features_of(surface)) {
    lp += triggerdetail::log_prob(model.person_counts, model.person_total,
                                  model.vocab_size, model.smoothing, f);
    lo += triggerdetail::log_prob(model.org_counts, model.org_total,
                                  model.vocab_size, model.smoothing, f);
  }
  const double hi = std::max(lp, lo);
  const double z = hi + std::log(std::exp(lp - hi) + std::exp(lo - hi));
  if (lp >= lo) return {EntityType::Person, std::exp(lp - z)};
  return {EntityType::Organisation, std::exp(lo - z)};
}

}  // namespace gazetteer
