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

#ifndef ONTOEXPLAIN_ONTOLOGY_H_
#define ONTOEXPLAIN_ONTOLOGY_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ontoexplain {

// A node of the concept graph together with its term lexicon. Terms are
// stored normalized: lowercase words joined by single spaces.
struct Concept {
  std::string id;
  std::string label;
  std::vector<std::string> terms;

  friend bool operator==(const Concept&, const Concept&) = default;
};

// Directed edge source -> target.
struct Relation {
  std::string source;
  std::string label;
  std::string target;

  friend auto operator<=>(const Relation&, const Relation&) = default;
};

// Immutable, validated concept graph. Safe for concurrent reads.
class Ontology {
 public:
  Ontology() = default;

  // Validates and indexes the given parts. Terms are normalized; duplicate
  // terms inside one concept and duplicate relations are collapsed. Throws
  // ValidationError on an empty concept id, duplicate concept ids, a concept
  // without terms, or a relation whose endpoint is not declared.
  static Ontology Create(std::string name, std::vector<Concept> concepts,
                         std::vector<Relation> relations,
                         std::map<std::string, std::string> meta = {});

  const std::string& name() const { return name_; }
  const std::vector<Concept>& concepts() const { return concepts_; }
  const std::vector<Relation>& relations() const { return relations_; }
  const std::map<std::string, std::string>& meta() const { return meta_; }

  const Concept* FindConcept(std::string_view id) const;
  bool HasConcept(std::string_view id) const { return FindConcept(id) != nullptr; }

  // True iff a relation a -> b is declared. Throws ValidationError when
  // either id is unknown.
  bool HasEdge(std::string_view a, std::string_view b) const;

  // Sorted ids of every concept whose lexicon contains the phrase exactly.
  // `phrase` is a sequence of normalized words.
  std::vector<std::string> ConceptsOfTerm(
      std::span<const std::string> phrase) const;
  std::vector<std::string> ConceptsOfTerm(std::string_view phrase) const;

  // Number of distinct terms across all concepts.
  std::size_t term_count() const { return term_index_.size(); }
  // Word count of the longest term; bounds the matcher's window.
  std::size_t max_term_words() const { return max_term_words_; }

 private:
  std::string name_;
  std::vector<Concept> concepts_;
  std::vector<Relation> relations_;
  std::map<std::string, std::string> meta_;
  std::unordered_map<std::string, std::size_t> concept_index_;
  std::unordered_map<std::string, std::vector<std::string>> term_index_;
  std::set<std::pair<std::size_t, std::size_t>> edges_;
  std::size_t max_term_words_ = 0;
};

// Lowercases and re-joins the words of `term` the same way the tokenizer
// normalizes text, so that lexicon entries and document phrases compare
// equal. Returns an empty string when the term has no word characters.
std::string NormalizeTerm(std::string_view term);

// Parses the ontology text format:
//
//   # comment
//   [meta]
//   name=drug-abuse
//   [concepts]
//   <id>|<label>|<term>;<term>;...
//   [relations]
//   <source id>|<label>|<target id>
//
// `source` names the input in error messages. Throws ParseError for
// malformed lines and ValidationError for semantic violations; both carry
// the offending line.
Ontology ParseOntology(std::string_view text, const std::string& source = "<ontology>");
Ontology LoadOntology(const std::filesystem::path& path);

// Writes the text format. ParseOntology(SerializeOntology(o)) reproduces o.
std::string SerializeOntology(const Ontology& ontology);
void SaveOntology(const Ontology& ontology, const std::filesystem::path& path);

// Builds an ontology from two CSV exports: concepts as `id,label,term` rows
// (one term per row) and relations as `source,label,target` rows. Both files
// start with a header row.
Ontology ConvertCsvOntology(std::string_view concepts_csv,
                            std::string_view relations_csv,
                            const std::string& name);

}  // namespace ontoexplain

#endif  // ONTOEXPLAIN_ONTOLOGY_H_
