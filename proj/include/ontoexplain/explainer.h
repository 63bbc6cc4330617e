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

#ifndef ONTOEXPLAIN_EXPLAINER_H_
#define ONTOEXPLAIN_EXPLAINER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ontoexplain/anchors.h"
#include "ontoexplain/blackbox.h"
#include "ontoexplain/composer.h"
#include "ontoexplain/ontology.h"
#include "ontoexplain/surrogate.h"
#include "ontoexplain/textproc.h"
#include "ontoexplain/triplex.h"
#include "ontoexplain/tuples.h"

namespace ontoexplain {

struct ExplainConfig {
  std::size_t samples = 1000;
  double sigma = 0.25;
  double threshold = 0.5;
  int gamma = 3;
  std::size_t top_k = 5;
  double ridge = 1e-3;
  std::uint64_t seed = 0;
  // Sample every content word independently (no tuple fusion).
  bool lime_mode = false;
  // Build ontology explanations from tuples.
  bool use_ontology = true;
  bool use_anchors = true;
  bool use_triplexes = true;
  // Add the heuristic extractor's triplexes before confidence filtering.
  bool builtin_triplexes = false;
  double min_confidence = kDefaultMinConfidence;
  std::vector<std::string> seeds;
  WordSet stopwords;
  WordSet verbs;
  ComposeOptions compose;

  // Defaults with the built-in seed, stopword and verb lists.
  static ExplainConfig Default();
};

struct ExplainResult {
  std::string doc_id;
  TokenizedDoc doc;
  std::vector<OntologyTuple> tuples;
  InterpretableUnits units;
  SurrogateModel surrogate;
  std::vector<OntologyExplanation> ontology_explanations;
  std::vector<Anchor> anchors;
  std::vector<Triplex> triplexes;
  std::vector<Explanation> explanations;
  std::vector<std::string> warnings;

  // False when the document has no units and nothing was fit.
  bool fitted() const { return !surrogate.coefficients.empty(); }
  // Unit indices by descending signed coefficient, lower index first on ties.
  std::vector<std::size_t> RankedUnits() const;
};

// Runs tuple extraction, sampling, the surrogate fit, anchor learning,
// triplex alignment and composition for one document. `triplexes` are the
// external records for this document; they are filtered by confidence.
ExplainResult Explain(const std::string& doc_id, std::string_view text,
                      const BlackBox& model, const Ontology& ontology,
                      std::span<const Triplex> triplexes, const ExplainConfig& config);

// One JSON object per line, in rank order.
std::string SerializeExplanations(const ExplainResult& result);

}  // namespace ontoexplain

#endif  // ONTOEXPLAIN_EXPLAINER_H_
