// Copyright 2026 The ontoexplain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ontoexplain/ontology.h"

#include <algorithm>
#include <sstream>

#include "ontoexplain/error.h"
#include "ontoexplain/textproc.h"

namespace ontoexplain {
namespace {

std::string_view Trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string JoinWords(std::span<const std::string> words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out.push_back(' ');
    out += words[i];
  }
  return out;
}

// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF.
std::vector<std::vector<std::string>> ParseCsv(std::string_view text,
                                               const std::string& source) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1;
  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    if (!(row.size() == 1 && row[0].empty())) rows.push_back(std::move(row));
    row.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n') {
      end_row();
      ++line;
    } else if (c != '\r') {
      field.push_back(c);
      field_started = true;
    }
  }
  if (quoted) throw ParseError(source, line, "unterminated quoted field");
  if (field_started || !row.empty()) end_row();
  return rows;
}

}  // namespace

std::string NormalizeTerm(std::string_view term) {
  return JoinWords(SplitWords(term));
}

Ontology Ontology::Create(std::string name, std::vector<Concept> concepts,
                          std::vector<Relation> relations,
                          std::map<std::string, std::string> meta) {
  Ontology o;
  o.name_ = std::move(name);
  o.meta_ = std::move(meta);
  for (auto& c : concepts) {
    if (c.id.empty()) throw ValidationError("concept with empty id");
    if (o.concept_index_.contains(c.id)) {
      throw ValidationError("duplicate concept id '" + c.id + "'");
    }
    std::vector<std::string> terms;
    for (const auto& raw : c.terms) {
      std::string term = NormalizeTerm(raw);
      if (term.empty()) continue;
      if (std::find(terms.begin(), terms.end(), term) == terms.end()) {
        terms.push_back(std::move(term));
      }
    }
    if (terms.empty()) {
      throw ValidationError("concept '" + c.id + "' has no terms");
    }
    c.terms = std::move(terms);
    if (c.label.empty()) c.label = c.id;
    o.concept_index_.emplace(c.id, o.concepts_.size());
    o.concepts_.push_back(std::move(c));
  }
  for (const auto& c : o.concepts_) {
    for (const auto& term : c.terms) {
      o.term_index_[term].push_back(c.id);
      const auto words =
          static_cast<std::size_t>(std::count(term.begin(), term.end(), ' ')) + 1;
      o.max_term_words_ = std::max(o.max_term_words_, words);
    }
  }
  for (auto& [term, ids] : o.term_index_) std::sort(ids.begin(), ids.end());

  std::sort(relations.begin(), relations.end());
  relations.erase(std::unique(relations.begin(), relations.end()), relations.end());
  for (const auto& r : relations) {
    const auto src = o.concept_index_.find(r.source);
    if (src == o.concept_index_.end()) {
      throw ValidationError("relation '" + r.label + "' references undeclared concept '" +
                            r.source + "'");
    }
    const auto dst = o.concept_index_.find(r.target);
    if (dst == o.concept_index_.end()) {
      throw ValidationError("relation '" + r.label + "' references undeclared concept '" +
                            r.target + "'");
    }
    o.edges_.emplace(src->second, dst->second);
  }
  o.relations_ = std::move(relations);
  return o;
}

const Concept* Ontology::FindConcept(std::string_view id) const {
  const auto it = concept_index_.find(std::string(id));
  return it == concept_index_.end() ? nullptr : &concepts_[it->second];
}

bool Ontology::HasEdge(std::string_view a, std::string_view b) const {
  const auto ia = concept_index_.find(std::string(a));
  if (ia == concept_index_.end()) {
    throw ValidationError("unknown concept id '" + std::string(a) + "'");
  }
  const auto ib = concept_index_.find(std::string(b));
  if (ib == concept_index_.end()) {
    throw ValidationError("unknown concept id '" + std::string(b) + "'");
  }
  return edges_.contains({ia->second, ib->second});
}

std::vector<std::string> Ontology::ConceptsOfTerm(
    std::span<const std::string> phrase) const {
  return ConceptsOfTerm(JoinWords(phrase));
}

std::vector<std::string> Ontology::ConceptsOfTerm(std::string_view phrase) const {
  const auto it = term_index_.find(std::string(phrase));
  if (it == term_index_.end()) return {};
  return it->second;
}

Ontology ParseOntology(std::string_view text, const std::string& source) {
  enum class Section { kNone, kMeta, kConcepts, kRelations };
  Section section = Section::kNone;
  std::map<std::string, std::string> meta;
  std::vector<Concept> concepts;
  std::vector<Relation> relations;
  std::map<std::string, std::size_t> concept_lines;
  std::vector<std::size_t> relation_lines;

  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw_line;
  while (std::getline(in, raw_line)) {
    ++line_no;
    std::string_view line = raw_line;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line == "[meta]") {
        section = Section::kMeta;
      } else if (line == "[concepts]") {
        section = Section::kConcepts;
      } else if (line == "[relations]") {
        section = Section::kRelations;
      } else {
        throw ParseError(source, line_no, "unknown section " + std::string(line));
      }
      continue;
    }
    switch (section) {
      case Section::kNone:
        throw ParseError(source, line_no, "content before the first section header");
      case Section::kMeta: {
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
          throw ParseError(source, line_no, "expected key=value in [meta]");
        }
        const auto key = Trim(line.substr(0, eq));
        if (key.empty()) throw ParseError(source, line_no, "empty meta key");
        meta[std::string(key)] = std::string(Trim(line.substr(eq + 1)));
        break;
      }
      case Section::kConcepts: {
        const auto fields = Split(line, '|');
        if (fields.size() != 3) {
          throw ParseError(source, line_no, "expected id|label|terms in [concepts]");
        }
        Concept c;
        c.id = std::string(Trim(fields[0]));
        c.label = std::string(Trim(fields[1]));
        for (const auto term : Split(fields[2], ';')) {
          if (!Trim(term).empty()) c.terms.emplace_back(Trim(term));
        }
        if (c.id.empty()) {
          throw ValidationError(source + ":" + std::to_string(line_no) +
                                ": concept with empty id");
        }
        if (concept_lines.contains(c.id)) {
          throw ValidationError(source + ":" + std::to_string(line_no) +
                                ": duplicate concept id '" + c.id + "'");
        }
        if (NormalizeTerm(fields[2]).empty()) {
          throw ValidationError(source + ":" + std::to_string(line_no) +
                                ": concept '" + c.id + "' has no terms");
        }
        concept_lines.emplace(c.id, line_no);
        concepts.push_back(std::move(c));
        break;
      }
      case Section::kRelations: {
        const auto fields = Split(line, '|');
        if (fields.size() != 3) {
          throw ParseError(source, line_no,
                           "expected source|label|target in [relations]");
        }
        relations.push_back({std::string(Trim(fields[0])),
                             std::string(Trim(fields[1])),
                             std::string(Trim(fields[2]))});
        relation_lines.push_back(line_no);
        break;
      }
    }
  }

  // Endpoint checks run after the whole file is read so relations may precede
  // the concepts they mention.
  for (std::size_t i = 0; i < relations.size(); ++i) {
    for (const auto* id : {&relations[i].source, &relations[i].target}) {
      if (!concept_lines.contains(*id)) {
        throw ValidationError(source + ":" + std::to_string(relation_lines[i]) +
                              ": relation references undeclared concept '" + *id + "'");
      }
    }
  }
  std::string name = meta.contains("name") ? meta["name"] : std::string();
  meta.erase("name");
  return Ontology::Create(std::move(name), std::move(concepts), std::move(relations),
                          std::move(meta));
}

Ontology LoadOntology(const std::filesystem::path& path) {
  Ontology o = ParseOntology(ReadFile(path), path.string());
  if (o.name().empty()) {
    return Ontology::Create(path.stem().string(), o.concepts(), o.relations(), o.meta());
  }
  return o;
}

std::string SerializeOntology(const Ontology& ontology) {
  std::ostringstream out;
  out << "[meta]\n";
  auto meta = ontology.meta();
  meta["name"] = ontology.name();
  for (const auto& [key, value] : meta) out << key << '=' << value << '\n';
  out << "\n[concepts]\n";
  for (const auto& c : ontology.concepts()) {
    out << c.id << '|' << c.label << '|';
    for (std::size_t i = 0; i < c.terms.size(); ++i) {
      if (i) out << ';';
      out << c.terms[i];
    }
    out << '\n';
  }
  out << "\n[relations]\n";
  for (const auto& r : ontology.relations()) {
    out << r.source << '|' << r.label << '|' << r.target << '\n';
  }
  return out.str();
}

void SaveOntology(const Ontology& ontology, const std::filesystem::path& path) {
  WriteFile(path, SerializeOntology(ontology));
}

Ontology ConvertCsvOntology(std::string_view concepts_csv,
                            std::string_view relations_csv,
                            const std::string& name) {
  const auto concept_rows = ParseCsv(concepts_csv, "concepts.csv");
  const auto relation_rows = ParseCsv(relations_csv, "relations.csv");
  std::vector<Concept> concepts;
  std::map<std::string, std::size_t> by_id;
  for (std::size_t i = 1; i < concept_rows.size(); ++i) {
    const auto& row = concept_rows[i];
    if (row.size() != 3) {
      throw ParseError("concepts.csv", i + 1, "expected 3 columns: id,label,term");
    }
    const std::string id(Trim(row[0]));
    auto [it, inserted] = by_id.emplace(id, concepts.size());
    if (inserted) concepts.push_back({id, std::string(Trim(row[1])), {}});
    concepts[it->second].terms.emplace_back(Trim(row[2]));
  }
  std::vector<Relation> relations;
  for (std::size_t i = 1; i < relation_rows.size(); ++i) {
    const auto& row = relation_rows[i];
    if (row.size() != 3) {
      throw ParseError("relations.csv", i + 1,
                       "expected 3 columns: source,label,target");
    }
    relations.push_back({std::string(Trim(row[0])), std::string(Trim(row[1])),
                         std::string(Trim(row[2]))});
  }
  return Ontology::Create(name, std::move(concepts), std::move(relations));
}

}  // namespace ontoexplain
