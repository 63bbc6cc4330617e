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

#ifndef ONTOEXPLAIN_TRIPLEX_H_
#define ONTOEXPLAIN_TRIPLEX_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontoexplain/textproc.h"

namespace ontoexplain {

// (subject, predicate, object) extraction for one document.
struct Triplex {
  std::string doc_id;
  std::string subject;
  std::string predicate;
  std::string object;
  double confidence = 0.0;

  // Filled in by AlignTriplex.
  int sentence = -1;
  std::optional<UnitSpan> subject_span;
  std::optional<UnitSpan> predicate_span;
  std::optional<UnitSpan> object_span;

  bool aligned() const { return subject_span && predicate_span && object_span; }
};

using TriplexIndex = std::map<std::string, std::vector<Triplex>>;

inline constexpr double kDefaultMinConfidence = 0.7;
// Confidence assigned by the built-in extractor; below the default filter.
inline constexpr double kBuiltinConfidence = 0.5;

// JSON lines, one record each:
//   {"doc_id": <string>, "subject": <string>, "predicate": <string>,
//    "object": <string>, "confidence": <real in [0, 1]>}
// Only records with confidence strictly greater than `min_confidence` are
// kept. Throws ParseError with the line number on malformed records.
TriplexIndex ParseTriplexes(std::string_view jsonl, double min_confidence,
                            const std::string& source = "<triplexes>");
TriplexIndex LoadTriplexes(const std::filesystem::path& path, double min_confidence);
std::string SerializeTriplexes(const std::vector<Triplex>& triplexes);

// Places every argument at its first occurrence, as a run of normalized
// words, inside the first sentence that contains all three. Returns nullopt
// when no single sentence does.
std::optional<Triplex> AlignTriplex(const TokenizedDoc& doc, const Triplex& triplex);

// Lexicon heuristic, per sentence: every maximal run of verb-lexicon words
// with a non-empty chunk on each side becomes a triplex. A chunk holds up to
// four words, stays inside its clause (no ',', ';', ':' or brackets between
// words), stops at verbs and causal words, and admits stopwords only when
// they are articles closing the subject or opening the object. Results are
// aligned and carry kBuiltinConfidence.
std::vector<Triplex> ExtractBuiltinTriplexes(const TokenizedDoc& doc,
                                             const std::string& doc_id,
                                             const WordSet& verbs);

}  // namespace ontoexplain

#endif  // ONTOEXPLAIN_TRIPLEX_H_
