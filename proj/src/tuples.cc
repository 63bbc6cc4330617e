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

#include "ontoexplain/tuples.h"

#include <algorithm>
#include <map>
#include <tuple>

#include "ontoexplain/error.h"

namespace ontoexplain {
namespace {

bool HasContentWord(const TokenizedDoc& doc, const UnitSpan& span) {
  for (std::size_t i = span.begin; i < span.end; ++i) {
    if (!doc.tokens[i].is_stopword()) return true;
  }
  return false;
}

}  // namespace

std::vector<OntologyTuple> ExtractTuples(const TokenizedDoc& doc,
                                         const Ontology& ontology, int gamma) {
  if (gamma < 0) throw ValidationError("gamma must be non-negative");

  // Group matches by span so each span carries its concept list.
  std::map<UnitSpan, std::vector<std::string>> spans;
  for (auto& m : MatchTerms(doc, ontology)) {
    if (!HasContentWord(doc, m.span)) continue;
    spans[m.span].push_back(m.concept_id);
  }

  std::vector<OntologyTuple> tuples;
  for (auto a = spans.begin(); a != spans.end(); ++a) {
    const int sentence = doc.tokens[a->first.begin].sent_idx;
    for (auto b = spans.begin(); b != spans.end(); ++b) {
      if (a == b) continue;
      if (doc.tokens[b->first.begin].sent_idx != sentence) continue;
      const int distance = LambdaDistance(doc, a->first, b->first);
      if (distance > gamma) continue;
      for (const auto& src : a->second) {
        for (const auto& dst : b->second) {
          if (!ontology.HasEdge(src, dst)) continue;
          tuples.push_back({a->first, b->first, src, dst, distance});
        }
      }
    }
  }
  std::sort(tuples.begin(), tuples.end(),
            [&doc](const OntologyTuple& x, const OntologyTuple& y) {
              return std::forward_as_tuple(doc.tokens[x.first.begin].sent_idx,
                                           x.first, x.second, x.source_concept,
                                           x.target_concept) <
                     std::forward_as_tuple(doc.tokens[y.first.begin].sent_idx,
                                           y.first, y.second, y.source_concept,
                                           y.target_concept);
            });
  return tuples;
}

}  // namespace ontoexplain
