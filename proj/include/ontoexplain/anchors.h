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

#ifndef ONTOEXPLAIN_ANCHORS_H_
#define ONTOEXPLAIN_ANCHORS_H_

#include <string>
#include <vector>

#include "ontoexplain/surrogate.h"
#include "ontoexplain/textproc.h"

namespace ontoexplain {

struct Anchor {
  int sentence = 0;
  UnitSpan span;
  std::string text;  // verbatim substring of the sentence
  double score = 0.0;
};

// Token range [begin, end) of a seed occurrence or an anchor candidate.
struct AnchorCandidate {
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Seed occurrences in `sentence`, each as the token range of the seed.
// Seeds are matched on normalized tokens and may span several words.
std::vector<AnchorCandidate> FindSeedOccurrences(const TokenizedDoc& doc, int sentence,
                                                 const std::vector<std::string>& seeds);

// At most one anchor per sentence: the prefix chain of each seed occurrence
// is scored with `scorer`, and the sentence-wide maximum is kept. Ties go to
// the earlier occurrence, then the shorter candidate. Sentences without a
// seed yield nothing.
std::vector<Anchor> LearnAnchors(const TokenizedDoc& doc,
                                 const std::vector<std::string>& seeds,
                                 const ImportanceScorer& scorer);

}  // namespace ontoexplain

#endif  // ONTOEXPLAIN_ANCHORS_H_
