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

#include "ontoexplain/anchors.h"

#include <numeric>

namespace ontoexplain {

std::vector<AnchorCandidate> FindSeedOccurrences(const TokenizedDoc& doc, int sentence,
                                                 const std::vector<std::string>& seeds) {
  std::vector<std::vector<std::string>> seed_words;
  for (const auto& s : seeds) {
    auto words = SplitWords(s);
    if (!words.empty()) seed_words.push_back(std::move(words));
  }
  std::vector<AnchorCandidate> out;
  const auto [first, last] = doc.SentenceRange(sentence);
  for (std::size_t i = first; i < last; ++i) {
    // Longest seed starting here; a token starts at most one occurrence.
    std::size_t best = 0;
    for (const auto& words : seed_words) {
      if (words.size() <= best || i + words.size() > last) continue;
      bool match = true;
      for (std::size_t k = 0; k < words.size() && match; ++k) {
        match = doc.tokens[i + k].norm == words[k];
      }
      if (match) best = words.size();
    }
    if (best > 0) out.push_back({i, i + best});
  }
  return out;
}

std::vector<Anchor> LearnAnchors(const TokenizedDoc& doc,
                                 const std::vector<std::string>& seeds,
                                 const ImportanceScorer& scorer) {
  std::vector<Anchor> anchors;
  for (int s = 0; s < doc.sentence_count; ++s) {
    const auto occurrences = FindSeedOccurrences(doc, s, seeds);
    if (occurrences.empty()) continue;
    const std::size_t sentence_end = doc.SentenceRange(s).second;

    std::vector<AnchorCandidate> candidates;
    std::vector<std::vector<std::size_t>> token_sets;
    for (const auto& occ : occurrences) {
      for (std::size_t end = occ.end; end <= sentence_end; ++end) {
        candidates.push_back({occ.begin, end});
        std::vector<std::size_t> tokens(end - occ.begin);
        std::iota(tokens.begin(), tokens.end(), occ.begin);
        token_sets.push_back(std::move(tokens));
      }
    }
    const auto scores = scorer.ScoreBatch(token_sets);
    std::size_t best = 0;
    for (std::size_t c = 1; c < candidates.size(); ++c) {
      if (scores[c] > scores[best]) best = c;
    }
    Anchor anchor;
    anchor.sentence = s;
    anchor.span = MakeSpan(doc, candidates[best].begin, candidates[best].end);
    anchor.text = std::string(doc.Slice(anchor.span.begin, anchor.span.end));
    anchor.score = scores[best];
    anchors.push_back(std::move(anchor));
  }
  return anchors;
}

}  // namespace ontoexplain
