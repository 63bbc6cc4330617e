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

#ifndef ONTOEXPLAIN_COMPOSER_H_
#define ONTOEXPLAIN_COMPOSER_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ontoexplain/anchors.h"
#include "ontoexplain/surrogate.h"
#include "ontoexplain/textproc.h"
#include "ontoexplain/triplex.h"
#include "ontoexplain/tuples.h"

namespace ontoexplain {

// Interchangeable spans ("x and/or y") that play one role in a merged
// explanation, with the concepts they were matched under.
struct ExplanationSlot {
  std::vector<UnitSpan> spans;
  std::vector<std::string> concepts;

  friend bool operator==(const ExplanationSlot&, const ExplanationSlot&) = default;
};

struct OntologyExplanation {
  int sentence = 0;
  std::vector<ExplanationSlot> slots;
  // Causal words added between explanation words.
  std::vector<std::size_t> causal_tokens;
  std::vector<OntologyTuple> tuples;

  // Sorted token indices of every word in the explanation.
  std::vector<std::size_t> Tokens() const;
  // Words in text order; alternatives of one slot joined by " and/or ".
  std::vector<std::string> Words(const TokenizedDoc& doc) const;
  // "{w1, w2 and/or w3}".
  std::string Render(const TokenizedDoc& doc) const;
};

// Merges the tuples of one sentence to a fixpoint. Explanations are kept in
// canonical order and each step applies the first rule that fires on the
// first eligible pair:
//   (a) same words up to the last slot, last slots share a concept:
//       {k, l} + {k, m} -> {k, l and/or m}
//   (b) same words after the first slot, first slots share a concept:
//       {k, m} + {l, m} -> {k and/or l, m}
//   (c) chain: last slot of one equals first slot of the other:
//       {k, l} + {l, m} -> {k, l, m}
//   (d) union: every word of one already appears in the other, which
//       absorbs it (covers {k, l}, {k, m}, {l, m} once chained).
// Tuples with the same span pair start as one explanation. The result does
// not depend on input order. Throws ValidationError if the tuples do not all
// share one sentence.
std::vector<OntologyExplanation> MergeTuples(const TokenizedDoc& doc,
                                             std::span<const OntologyTuple> tuples);

// Adds every causal word lying strictly between the first and last word of
// the explanation.
OntologyExplanation InsertCausalWords(const TokenizedDoc& doc, OntologyExplanation expl);

// Tuples grouped by sentence, merged and given causal words.
std::vector<OntologyExplanation> BuildOntologyExplanations(
    const TokenizedDoc& doc, std::span<const OntologyTuple> tuples);

struct Explanation {
  int sentence = 0;
  // Token range [begin, end) and its verbatim text.
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string text;
  double score = 0.0;
  int rank = 0;
  std::vector<OntologyTuple> tuples;
  std::optional<Anchor> anchor;
  std::vector<Triplex> triplexes;
};

struct ComposeOptions {
  // When true, sentences without ontology explanations are still built from
  // their triplexes (plus anchor). Used by the triplex baseline.
  bool triplexes_without_ontology = false;
};

// Per sentence: with ontology explanations, the span from the first to the
// last position among their words, the sentence's anchor and its aligned
// triplexes; with only an anchor, the anchor alone; otherwise nothing.
// Explanations are scored with `scorer` and sorted by descending score
// (ties by sentence), ranks starting at 1. Unaligned triplexes are skipped.
std::vector<Explanation> Compose(const TokenizedDoc& doc,
                                 std::span<const OntologyExplanation> ontology_expls,
                                 std::span<const Anchor> anchors,
                                 std::span<const Triplex> triplexes,
                                 const ImportanceScorer& scorer,
                                 const ComposeOptions& options = {});

// The ranking and span logic of Compose without scoring; scores stay 0 and
// output is in sentence order.
std::vector<Explanation> ComposeSpans(const TokenizedDoc& doc,
                                      std::span<const OntologyExplanation> ontology_expls,
                                      std::span<const Anchor> anchors,
                                      std::span<const Triplex> triplexes,
                                      const ComposeOptions& options = {});

}  // namespace ontoexplain

#endif  // ONTOEXPLAIN_COMPOSER_H_
