// Copyright 2026 The Gazetteer Authors
// Licensed under the Apache License, Version 2.0

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gazetteer/core.hpp"
#include "gazetteer/trigger_ner.hpp"

using namespace gazetteer;

namespace {

const std::string kDataDir = std::string(GAZ_SOURCE_DIR) + "/data";

TriggerLexicon shipped_lexicon() {
  return parse_trigger_lexicon(read_file(kDataDir + "/lexicon/en.lex"));
}

std::vector<std::string> read_names(const std::string& path) {
  std::vector<std::string> out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line.front() != '#') out.push_back(line);
  return out;
}

std::set<std::string> candidate_surfaces(const std::vector<CandidateName>& cs) {
  std::set<std::string> out;
  for (const auto& c : cs) out.insert(c.surface);
  return out;
}

}  // namespace

TEST_CASE("lexicon parsing") {
  SECTION("shipped english lexicon") {
    const TriggerLexicon lex = shipped_lexicon();
    CHECK(lex.language.code == "en");
    CHECK(lex.triggers.size() > 20);
    CHECK(lex.org_words.count("party") == 1);
    CHECK(lex.stop_words.count("Monday") == 1);
  }
  SECTION("sections and classes") {
    const TriggerLexicon lex = parse_trigger_lexicon(
        "lang en\n"
        "[triggers]\n"
        "title\tPrime Minister\n"
        "age\tre:[0-9]+-year-old\n"
        "[org_words]\nparty\n"
        "[stop_words]\nMonday\n");
    REQUIRE(lex.triggers.size() == 2);
    CHECK(lex.triggers[0].cls == TriggerClass::Title);
    CHECK(lex.triggers[0].words == std::vector<std::string>{"prime", "minister"});
    CHECK(lex.triggers[1].is_regex);
  }
  SECTION("entries before a section header are rejected") {
    CHECK_THROWS_WITH(parse_trigger_lexicon("lang en\ntitle\tOops\n"),
                      Catch::Matchers::ContainsSubstring("section"));
  }
  SECTION("trigger lines need class TAB entry") {
    CHECK_THROWS_WITH(
        parse_trigger_lexicon("lang en\n[triggers]\njust one column\n"),
        Catch::Matchers::ContainsSubstring("line 3"));
  }
  SECTION("unknown classes are rejected") {
    CHECK_THROWS_AS(parse_trigger_lexicon("lang en\n[triggers]\nnope\tx\n"),
                    std::runtime_error);
  }
}

TEST_CASE("trigger-based candidate extraction") {
  const TriggerLexicon lex = shipped_lexicon();

  SECTION("name to the right of a title") {
    const auto cs = find_candidates("Prime Minister Tony Blair said hello.", lex);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].surface == "Tony Blair");
    CHECK(cs[0].guessed_type == EntityType::Person);
    CHECK(cs[0].evidence.find("Prime") != std::string::npos);
  }
  SECTION("name to the left of a verb phrase") {
    const auto cs = find_candidates("Angela Merkel said the talks had failed.", lex);
    REQUIRE_FALSE(cs.empty());
    CHECK(cs[0].surface == "Angela Merkel");
  }
  SECTION("leading stop words are skipped, not captured") {
    const auto cs = find_candidates("On Monday Angela Merkel spoke in Berlin.", lex);
    REQUIRE_FALSE(cs.empty());
    const auto got = candidate_surfaces(cs);
    CHECK(got.count("Angela Merkel") == 1);
    for (const auto& s : got) {
      CHECK(s.find("Monday") == std::string::npos);
      CHECK(s.find("On") != 0);
    }
  }
  SECTION("stacked triggers coalesce into one evidence block") {
    const auto cs = find_candidates(
        "The 57-year-old former British Prime Minister Tony Blair resigned "
        "yesterday.",
        lex);
    REQUIRE_FALSE(cs.empty());
    CHECK(cs[0].surface == "Tony Blair");
    CHECK(cs[0].evidence.find("57-year-old") != std::string::npos);
    CHECK(cs[0].evidence.find("former") != std::string::npos);
    CHECK(cs[0].evidence.find("British") != std::string::npos);
    CHECK(cs[0].evidence.find("Minister") != std::string::npos);
  }
  SECTION("no triggers, no candidates") {
    CHECK(find_candidates("A quiet day on the river bank.", lex).empty());
    CHECK(find_candidates("", lex).empty());
  }
  SECTION("names never cross clause punctuation") {
    const auto cs = find_candidates("In Paris, Nicolas Sarkozy spoke.", lex);
    REQUIRE_FALSE(cs.empty());
    CHECK(cs[0].surface == "Nicolas Sarkozy");
  }
  SECTION("particles ride along inside a span") {
    const auto cs =
        find_candidates("President Charles de Gaulle visited London.", lex);
    REQUIRE_FALSE(cs.empty());
    CHECK(cs[0].surface == "Charles de Gaulle");
  }
  SECTION("spans cap at four capitalized tokens") {
    const auto cs = find_candidates(
        "President Alpha Bravo Charlie Delta Echo spoke.", lex);
    REQUIRE_FALSE(cs.empty());
    CHECK(cs[0].surface == "Alpha Bravo Charlie Delta");
  }
  SECTION("candidates never contain stop words") {
    const auto cs = find_candidates(
        "President George Bush On Monday visited Texas.", lex);
    for (const auto& c : cs) {
      CHECK(c.surface.find("Monday") == std::string::npos);
      CHECK(c.surface.find("On") == std::string::npos);
    }
  }
  SECTION("duplicate spans are reported once") {
    const auto cs = find_candidates(
        "The former President George Bush said he would not run.", lex);
    std::set<std::string> seen;
    for (const auto& c : cs) REQUIRE(seen.insert(c.surface).second);
  }
  SECTION("lowercase names are not candidates") {
    CHECK(candidate_surfaces(
              find_candidates("the spokesman said nothing at all.", lex))
              .count("the") == 0);
  }
}

TEST_CASE("type model training and classification") {
  const TriggerLexicon lex = shipped_lexicon();
  const auto persons = read_names(kDataDir + "/classifier/persons.txt");
  const auto orgs = read_names(kDataDir + "/classifier/organisations.txt");
  REQUIRE(persons.size() >= 40);
  REQUIRE(orgs.size() >= 40);

  SECTION("training rejects empty classes") {
    CHECK_THROWS_AS(train_type_model({}, orgs), EmptyTrainingClass);
    CHECK_THROWS_AS(train_type_model(persons, {}), EmptyTrainingClass);
  }
  SECTION("an untrained model refuses to classify") {
    TypeModel blank;
    CHECK_THROWS_AS(guess_type("Tony Blair", lex, blank), UntrainedModel);
  }
  SECTION("org words short-circuit to a certain organisation") {
    const TypeModel model = train_type_model(persons, orgs);
    const TypeGuess g = guess_type("Justice Party", lex, model);
    CHECK(g.type == EntityType::Organisation);
    CHECK(g.score == 1.0);
  }
  SECTION("separable toy classes") {
    const TypeModel model = train_type_model(
        {"Anna Smith", "Anna Jones", "Maria Smith"},
        {"First Bank", "Central Bank", "National Bank"});
    TriggerLexicon empty_lex;
    CHECK(guess_type("Anna Brown", empty_lex, model).type == EntityType::Person);
    CHECK(guess_type("Coastal Bank", empty_lex, model).type ==
          EntityType::Organisation);
  }
  SECTION("shipped lists classify familiar names") {
    const TypeModel model = train_type_model(persons, orgs);
    CHECK(guess_type("Angela Merkel", lex, model).type == EntityType::Person);
    CHECK(guess_type("People's Liberation Front", lex, model).type ==
          EntityType::Organisation);
  }
  SECTION("scores are posterior probabilities") {
    const TypeModel model = train_type_model(persons, orgs);
    for (const char* s : {"Angela Merkel", "Tony Blair", "National Front",
                          "Zzyzx Qwfp"}) {
      const TypeGuess g = guess_type(s, lex, model);
      CHECK(g.score > 0.0);
      CHECK(g.score <= 1.0);
      CHECK(g.score >= 0.5);
    }
  }
  SECTION("prediction is invariant to duplicating both classes") {
    auto doubled = [](std::vector<std::string> v) {
      const auto copy = v;
      v.insert(v.end(), copy.begin(), copy.end());
      return v;
    };
    const TypeModel a = train_type_model(persons, orgs);
    const TypeModel b = train_type_model(doubled(persons), doubled(orgs));
    for (const char* s : {"Angela Merkel", "National Front", "Kofi Annan"}) {
      CHECK(guess_type(s, lex, a).type == guess_type(s, lex, b).type);
    }
  }
  SECTION("held-out accuracy on the shipped lists") {
    std::vector<std::string> train_p, test_p, train_o, test_o;
    for (std::size_t i = 0; i < persons.size(); ++i)
      (i % 5 == 0 ? test_p : train_p).push_back(persons[i]);
    for (std::size_t i = 0; i < orgs.size(); ++i)
      (i % 5 == 0 ? test_o : train_o).push_back(orgs[i]);
    const TypeModel model = train_type_model(train_p, train_o);
    TriggerLexicon no_lex;
    std::size_t correct = 0, total = 0;
    for (const auto& s : test_p) {
      ++total;
      if (guess_type(s, no_lex, model).type == EntityType::Person) ++correct;
    }
    for (const auto& s : test_o) {
      ++total;
      if (guess_type(s, no_lex, model).type == EntityType::Organisation)
        ++correct;
    }
    CHECK(total >= 20);
    CHECK(correct * 10 >= total * 7);
  }
}
