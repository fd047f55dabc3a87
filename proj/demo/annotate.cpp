// Copyright 2026 The Gazetteer Authors
// Licensed under the Apache License, Version 2.0
//
// Reads a resource file, scans text from stdin, and reprints it with every
// recognised mention annotated inline as [surface -> main name (#id)].

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "gazetteer/core.hpp"
#include "gazetteer/match.hpp"
#include "gazetteer/unicode.hpp"
#include "gazetteer/zip.hpp"

using namespace gazetteer;

int main(int argc, char** argv) {
  CLI::App app{"annotate text with gazetteer mentions"};
  std::string resource;
  std::string lang;
  app.add_option("resource", resource, "resource file (text or zip)")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--lang", lang, "2-letter language scope");
  CLI11_PARSE(app, argc, argv);

  if (!lang.empty() && !(LanguageScope::valid(lang) && lang != "u")) {
    std::cerr << "invalid language '" << lang
              << "' (want a 2-letter code)\n";
    return 1;
  }

  Repository repo;
  try {
    std::string bytes = read_file(resource);
    repo = parse_resource(looks_like_zip(bytes) ? zip_read_first(bytes).data
                                                : bytes);
  } catch (const std::exception& e) {
    std::cerr << "cannot load resource: " << e.what() << "\n";
    return 1;
  }

  std::optional<LanguageScope> scope;
  if (!lang.empty()) scope = LanguageScope{lang};
  const CompiledMatcher matcher = compile(repo, scope);

  std::ostringstream buffer;
  buffer << std::cin.rdbuf();
  const std::string text = buffer.str();
  const std::u32string cps = utf8_decode(text);
  const std::vector<Match> matches = find_all(matcher, text);

  // Matches arrive sorted and non-overlapping, so a single pass suffices.
  std::string out;
  std::size_t next = 0;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (next < matches.size() && matches[next].offset == i) {
      const Match& m = matches[next];
      out += '[';
      out += utf8_encode(cps.substr(i, m.length));
      out += " -> ";
      out += m.main_name;
      out += " (#" + std::to_string(m.id) + ")]";
      i += m.length - 1;
      ++next;
      continue;
    }
    utf8_append(out, cps[i]);
  }
  std::cout << out;
  std::cerr << "mentions=" << matches.size() << "\n";
  return 0;
}
