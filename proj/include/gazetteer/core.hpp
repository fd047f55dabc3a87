// Copyright 2026 The Gazetteer Authors
// Licensed under the Apache License, Version 2.0
//
// Domain types, the entity repository, resource-file parsing and
// serialization, the moderation edit log, and the flags sidecar.
//
// Resource file shape: UTF-8 text, LF line endings, four tab-separated
// columns per line (id, P|O, language, surface). Spaces inside a surface
// are written as '+'; a literal '+' or ' ' in column four is rejected so
// that parse and serialize stay exact inverses byte for byte.

#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

namespace gazetteer {

using EntityId = std::uint64_t;

enum class EntityType { Person, Organisation };

inline char type_code(EntityType t) {
  return t == EntityType::Person ? 'P' : 'O';
}

struct LanguageScope {
  std::string code = "u";

  bool universal() const { return code == "u"; }
  bool admits(std::string_view lang) const { return universal() || code == lang; }
  auto operator<=>(const LanguageScope&) const = default;

  static bool valid(std::string_view c) {
    if (c == "u") return true;
    return c.size() == 2 && c[0] >= 'a' && c[0] <= 'z' && c[1] >= 'a' &&
           c[1] <= 'z';
  }
};

enum VariantFlag : std::uint8_t {
  kValidated = 1,
  kFromWikipedia = 2,
  kFrequencyEligible = 4,
};

struct NameVariant {
  std::string surface;
  LanguageScope scope;
  std::uint8_t flags = 0;

  bool operator==(const NameVariant& o) const {
    return surface == o.surface && scope == o.scope && flags == o.flags;
  }
};

struct EntityRecord {
  EntityId id = 0;
  EntityType etype = EntityType::Person;
  std::vector<NameVariant> variants;

  const NameVariant& main() const { return variants.front(); }
  bool operator==(const EntityRecord&) const = default;
};

struct Repository {
  std::map<EntityId, EntityRecord> entities;
  std::map<std::string, std::set<std::string>> name_stop_words;
  EntityId next_id = 1;

  EntityId allocate_id() { return next_id++; }
  bool operator==(const Repository&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  enum class Kind { MalformedLine, InvalidType, InvalidLanguage, DuplicateVariant };

  ParseError(Kind kind, std::size_t line, const std::string& detail)
      : std::runtime_error(format(kind, line, detail)), kind_(kind), line_(line) {}

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  static std::string format(Kind kind, std::size_t line, const std::string& d) {
    const char* name = "malformed line";
    switch (kind) {
      case Kind::MalformedLine: name = "malformed line"; break;
      case Kind::InvalidType: name = "invalid type"; break;
      case Kind::InvalidLanguage: name = "invalid language"; break;
      case Kind::DuplicateVariant: name = "duplicate variant"; break;
    }
    std::string msg = std::string(name) + " at line " + std::to_string(line);
    if (!d.empty()) msg += ": " + d;
    return msg;
  }

  Kind kind_;
  std::size_t line_;
};

inline std::string plus_encode(std::string_view surface) {
  std::string out(surface);
  std::replace(out.begin(), out.end(), ' ', '+');
  return out;
}

inline std::string plus_decode(std::string_view column) {
  std::string out(column);
  std::replace(out.begin(), out.end(), '+', ' ');
  return out;
}

// True iff the surface obeys the variant invariants: non-empty, no tab,
// newline, carriage return or '+', trimmed, and single internal spaces.
inline bool valid_surface(std::string_view s) {
  if (s.empty()) return false;
  if (s.front() == ' ' || s.back() == ' ') return false;
  char prev = 0;
  for (char c : s) {
    if (c == '\t' || c == '\n' || c == '\r' || c == '+') return false;
    if (c == ' ' && prev == ' ') return false;
    prev = c;
  }
  return true;
}

namespace detail {

inline std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

inline bool parse_id(std::string_view field, EntityId& out) {
  if (field.empty() || field.size() > 18) return false;
  EntityId v = 0;
  for (char c : field) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<EntityId>(c - '0');
  }
  if (v == 0) return false;
  out = v;
  return true;
}

}  // namespace detail

inline Repository parse_resource(std::string_view text) {
  Repository repo;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    if (pos == text.size()) break;
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;

    const auto cols = detail::split_tabs(line);
    if (cols.size() != 4)
      throw ParseError(ParseError::Kind::MalformedLine, line_no,
                       "expected 4 columns, got " + std::to_string(cols.size()));
    EntityId id = 0;
    if (!detail::parse_id(cols[0], id))
      throw ParseError(ParseError::Kind::MalformedLine, line_no,
                       "bad id '" + std::string(cols[0]) + "'");
    EntityType etype;
    if (cols[1] == "P") {
      etype = EntityType::Person;
    } else if (cols[1] == "O") {
      etype = EntityType::Organisation;
    } else {
      throw ParseError(ParseError::Kind::InvalidType, line_no,
                       "'" + std::string(cols[1]) + "'");
    }
    if (!LanguageScope::valid(cols[2]))
      throw ParseError(ParseError::Kind::InvalidLanguage, line_no,
                       "'" + std::string(cols[2]) + "'");
    if (cols[3].find(' ') != std::string_view::npos)
      throw ParseError(ParseError::Kind::MalformedLine, line_no,
                       "literal space in surface column; use '+'");
    const std::string surface = plus_decode(cols[3]);
    if (!valid_surface(surface))
      throw ParseError(ParseError::Kind::MalformedLine, line_no,
                       "invalid surface '" + std::string(cols[3]) + "'");

    auto [it, inserted] = repo.entities.try_emplace(id);
    EntityRecord& rec = it->second;
    if (inserted) {
      rec.id = id;
      rec.etype = etype;
    } else if (rec.etype != etype) {
      throw ParseError(ParseError::Kind::InvalidType, line_no,
                       "type differs from earlier lines of entity " +
                           std::to_string(id));
    }
    const LanguageScope scope{std::string(cols[2])};
    for (const NameVariant& v : rec.variants) {
      if (v.surface == surface && v.scope == scope)
        throw ParseError(ParseError::Kind::DuplicateVariant, line_no,
                         std::string(cols[3]));
    }
    rec.variants.push_back(NameVariant{surface, scope, 0});
    if (id >= repo.next_id) repo.next_id = id + 1;
  }
  return repo;
}

inline std::string serialize_resource(const Repository& repo) {
  std::string out;
  for (const auto& [id, rec] : repo.entities) {
    for (const NameVariant& v : rec.variants) {
      out += std::to_string(id);
      out += '\t';
      out += type_code(rec.etype);
      out += '\t';
      out += v.scope.code;
      out += '\t';
      out += plus_encode(v.surface);
      out += '\n';
    }
  }
  return out;
}

inline std::vector<std::tuple<EntityId, EntityType, LanguageScope, std::string>>
export_variants(const Repository& repo, const std::string* language = nullptr) {
  std::vector<std::tuple<EntityId, EntityType, LanguageScope, std::string>> out;
  for (const auto& [id, rec] : repo.entities) {
    for (const NameVariant& v : rec.variants) {
      if (language != nullptr && !v.scope.admits(*language)) continue;
      out.emplace_back(id, rec.etype, v.scope, v.surface);
    }
  }
  return out;
}

struct MergeEntities {
  EntityId winner = 0;
  EntityId loser = 0;
};
struct SetMainName {
  EntityId id = 0;
  std::string surface;
};
struct SetType {
  EntityId id = 0;
  EntityType etype = EntityType::Person;
};
struct AddStopWord {
  std::string language;
  std::string word;
};
struct RestrictVariant {
  EntityId id = 0;
  std::string surface;
  LanguageScope scope;
};

using ModerationEdit =
    std::variant<MergeEntities, SetMainName, SetType, AddStopWord, RestrictVariant>;

class EditError : public std::runtime_error {
 public:
  enum class Kind { UnknownEntity, UnknownVariant, SelfMerge, MalformedEdit };

  EditError(Kind kind, const std::string& detail)
      : std::runtime_error(format(kind, detail)), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  static std::string format(Kind kind, const std::string& d) {
    const char* name = "edit error";
    switch (kind) {
      case Kind::UnknownEntity: name = "unknown entity"; break;
      case Kind::UnknownVariant: name = "unknown variant"; break;
      case Kind::SelfMerge: name = "merge of an entity with itself"; break;
      case Kind::MalformedEdit: name = "malformed edit"; break;
    }
    return std::string(name) + (d.empty() ? "" : ": " + d);
  }

  Kind kind_;
};

namespace detail {

inline EntityRecord& find_entity(Repository& repo, EntityId id) {
  auto it = repo.entities.find(id);
  if (it == repo.entities.end())
    throw EditError(EditError::Kind::UnknownEntity, std::to_string(id));
  return it->second;
}

}  // namespace detail

inline void apply_edit(Repository& repo, const ModerationEdit& edit) {
  if (const auto* m = std::get_if<MergeEntities>(&edit)) {
    if (m->winner == m->loser)
      throw EditError(EditError::Kind::SelfMerge, std::to_string(m->winner));
    EntityRecord& winner = detail::find_entity(repo, m->winner);
    EntityRecord& loser = detail::find_entity(repo, m->loser);
    for (const NameVariant& v : loser.variants) {
      const bool dup = std::any_of(
          winner.variants.begin(), winner.variants.end(),
          [&](const NameVariant& w) {
            return w.surface == v.surface && w.scope == v.scope;
          });
      if (!dup) winner.variants.push_back(v);
    }
    repo.entities.erase(m->loser);
    return;
  }
  if (const auto* m = std::get_if<SetMainName>(&edit)) {
    EntityRecord& rec = detail::find_entity(repo, m->id);
    auto it = std::find_if(
        rec.variants.begin(), rec.variants.end(),
        [&](const NameVariant& v) { return v.surface == m->surface; });
    if (it == rec.variants.end())
      throw EditError(EditError::Kind::UnknownVariant, m->surface);
    std::rotate(rec.variants.begin(), it, it + 1);
    return;
  }
  if (const auto* m = std::get_if<SetType>(&edit)) {
    detail::find_entity(repo, m->id).etype = m->etype;
    return;
  }
  if (const auto* m = std::get_if<AddStopWord>(&edit)) {
    repo.name_stop_words[m->language].insert(m->word);
    return;
  }
  const auto& m = std::get<RestrictVariant>(edit);
  EntityRecord& rec = detail::find_entity(repo, m.id);
  std::size_t first = rec.variants.size();
  for (std::size_t i = 0; i < rec.variants.size(); ++i) {
    if (rec.variants[i].surface == m.surface) {
      first = i;
      break;
    }
  }
  if (first == rec.variants.size())
    throw EditError(EditError::Kind::UnknownVariant, m.surface);
  rec.variants[first].scope = m.scope;
  // Collapse other scopes of the same surface so the new scope is total.
  rec.variants.erase(
      std::remove_if(rec.variants.begin() + static_cast<std::ptrdiff_t>(first) + 1,
                     rec.variants.end(),
                     [&](const NameVariant& v) { return v.surface == m.surface; }),
      rec.variants.end());
}

// Edit log: one edit per line, tab separated.
//   MERGE <winner> <loser>
//   MAIN  <id> <surface+>
//   TYPE  <id> <P|O>
//   STOP  <lang> <word>
//   SCOPE <id> <surface+> <lang|u>
inline std::vector<ModerationEdit> parse_edit_log(std::string_view text) {
  std::vector<ModerationEdit> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto cols = detail::split_tabs(line);
    const auto fail = [&](const char* why) {
      throw EditError(EditError::Kind::MalformedEdit,
                      std::string(why) + " at line " + std::to_string(line_no));
    };
    const auto need_id = [&](std::string_view f) {
      EntityId id = 0;
      if (!detail::parse_id(f, id)) fail("bad entity id");
      return id;
    };
    if (cols[0] == "MERGE" && cols.size() == 3) {
      out.push_back(MergeEntities{need_id(cols[1]), need_id(cols[2])});
    } else if (cols[0] == "MAIN" && cols.size() == 3) {
      out.push_back(SetMainName{need_id(cols[1]), plus_decode(cols[2])});
    } else if (cols[0] == "TYPE" && cols.size() == 3) {
      if (cols[2] != "P" && cols[2] != "O") fail("bad type");
      out.push_back(SetType{need_id(cols[1]), cols[2] == "P"
                                                  ? EntityType::Person
                                                  : EntityType::Organisation});
    } else if (cols[0] == "STOP" && cols.size() == 3) {
      if (!LanguageScope::valid(cols[1])) fail("bad language");
      out.push_back(AddStopWord{std::string(cols[1]), std::string(cols[2])});
    } else if (cols[0] == "SCOPE" && cols.size() == 4) {
      if (!LanguageScope::valid(cols[3])) fail("bad language");
      out.push_back(RestrictVariant{need_id(cols[1]), plus_decode(cols[2]),
                                    LanguageScope{std::string(cols[3])}});
    } else {
      fail("unknown or malformed edit");
    }
  }
  return out;
}

// Flags sidecar: the four-column format has no room for per-variant flags,
// so they live next to the resource as `id \t scope \t surface+ \t letters`
// with letters drawn from V (validated), W (from Wikipedia), F (frequency
// eligible). Lines naming unknown variants are ignored.
inline void apply_flags_sidecar(Repository& repo, std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty() || line.front() == '#') continue;
    const auto cols = detail::split_tabs(line);
    if (cols.size() != 4) continue;
    EntityId id = 0;
    if (!detail::parse_id(cols[0], id)) continue;
    auto it = repo.entities.find(id);
    if (it == repo.entities.end()) continue;
    const std::string surface = plus_decode(cols[2]);
    for (NameVariant& v : it->second.variants) {
      if (v.surface != surface || v.scope.code != cols[1]) continue;
      std::uint8_t flags = 0;
      for (char c : cols[3]) {
        if (c == 'V') flags |= kValidated;
        if (c == 'W') flags |= kFromWikipedia;
        if (c == 'F') flags |= kFrequencyEligible;
      }
      v.flags = flags;
    }
  }
}

inline std::string serialize_flags_sidecar(const Repository& repo) {
  std::string out;
  for (const auto& [id, rec] : repo.entities) {
    for (const NameVariant& v : rec.variants) {
      if (v.flags == 0) continue;
      out += std::to_string(id);
      out += '\t';
      out += v.scope.code;
      out += '\t';
      out += plus_encode(v.surface);
      out += '\t';
      if (v.flags & kValidated) out += 'V';
      if (v.flags & kFromWikipedia) out += 'W';
      if (v.flags & kFrequencyEligible) out += 'F';
      out += '\n';
    }
  }
  return out;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

// Writes via a sibling temp file plus rename so readers never observe a
// torn file and an aborted command leaves the original untouched.
inline void write_file_atomic(const std::filesystem::path& path,
                              std::string_view bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace gazetteer
