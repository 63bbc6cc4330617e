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

#ifndef ONTOEXPLAIN_SYNTH_H_
#define ONTOEXPLAIN_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ontoexplain/blackbox.h"
#include "ontoexplain/ontology.h"

namespace ontoexplain {

// Planted-correlation corpus: a "positive" document has one sentence in which
// an agent term is followed, within `max_gap` filler words, by an effect term.
// A "negative" document carries at most one keyword. The ontology declares
// agent -> effect, so the planted pair is an ontology tuple at gamma >=
// max_gap + 1.
struct SynthConfig {
  std::size_t docs = 200;
  double positive_fraction = 0.5;
  // Share of negative documents that contain a single keyword.
  double negative_keyword_rate = 0.2;
  std::size_t min_sentences = 1;
  std::size_t max_sentences = 3;
  std::size_t min_words = 5;
  std::size_t max_words = 10;
  std::size_t max_gap = 1;
  std::size_t agent_terms = 6;
  std::size_t effect_terms = 6;
  std::size_t filler_terms = 80;
  // Seed of the vocabulary; corpora sharing it share one ontology.
  std::uint64_t vocabulary_seed = 7;
  std::uint64_t seed = 0;
};

inline constexpr char kPositiveLabel[] = "positive";
inline constexpr char kNegativeLabel[] = "negative";

struct SynthVocabulary {
  std::vector<std::string> agents;
  std::vector<std::string> effects;
  std::vector<std::string> fillers;
};

SynthVocabulary MakeSynthVocabulary(const SynthConfig& config);
Ontology MakeSynthOntology(const SynthConfig& config);
LabeledCorpus MakeSynthCorpus(const SynthConfig& config);

}  // namespace ontoexplain

#endif  // ONTOEXPLAIN_SYNTH_H_
