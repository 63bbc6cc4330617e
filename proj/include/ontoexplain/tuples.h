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

#ifndef ONTOEXPLAIN_TUPLES_H_
#define ONTOEXPLAIN_TUPLES_H_

#include <string>
#include <vector>

#include "ontoexplain/ontology.h"
#include "ontoexplain/textproc.h"

namespace ontoexplain {

// Ordered word pair linked by a declared relation. `first` belongs to
// `source_concept`, `second` to `target_concept`; the order follows the edge,
// not the text.
struct OntologyTuple {
  UnitSpan first;
  UnitSpan second;
  std::string source_concept;
  std::string target_concept;
  int distance = 0;

  int sentence(const TokenizedDoc& doc) const { return doc.tokens[first.begin].sent_idx; }

  friend bool operator==(const OntologyTuple& a, const OntologyTuple& b) {
    return a.first == b.first && a.second == b.second &&
           a.source_concept == b.source_concept &&
           a.target_concept == b.target_concept && a.distance == b.distance;
  }
};

// Every pair of matched spans (a, b), a != b, with concepts A of a and B of
// b such that A -> B is declared and LambdaDistance(a, b) <= gamma. Spans
// made only of stopwords never take part. Sorted by sentence, first span,
// second span, then concept ids. Throws ValidationError for gamma < 0.
std::vector<OntologyTuple> ExtractTuples(const TokenizedDoc& doc,
                                         const Ontology& ontology, int gamma);

}  // namespace ontoexplain

#endif  // ONTOEXPLAIN_TUPLES_H_
