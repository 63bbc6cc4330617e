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

#include "ontoexplain/explainer.h"

#include <algorithm>
#include <numeric>

#include "json.hpp"
#include "ontoexplain/error.h"
#include "ontoexplain/resources.h"

namespace ontoexplain {

using Json = nlohmann::ordered_json;

ExplainConfig ExplainConfig::Default() {
  ExplainConfig config;
  config.seeds = DefaultAnchorSeeds();
  config.stopwords = DefaultStopwords();
  config.verbs = DefaultVerbs();
  return config;
}

std::vector<std::size_t> ExplainResult::RankedUnits() const {
  std::vector<std::size_t> order(surrogate.coefficients.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return surrogate.coefficients[a] > surrogate.coefficients[b];
  });
  return order;
}

ExplainResult Explain(const std::string& doc_id, std::string_view text,
                      const BlackBox& model, const Ontology& ontology,
                      std::span<const Triplex> triplexes, const ExplainConfig& config) {
  ExplainResult result;
  result.doc_id = doc_id;
  result.doc = Tokenize(text, config.stopwords);
  const TokenizedDoc& doc = result.doc;

  result.tuples = ExtractTuples(doc, ontology, config.gamma);
  const std::vector<OntologyTuple> no_tuples;
  result.units = BuildUnits(doc, config.lime_mode ? std::span<const OntologyTuple>(no_tuples)
                                                  : std::span<const OntologyTuple>(result.tuples));
  if (result.units.size() == 0) {
    result.warnings.push_back("document has no content words; nothing to explain");
    return result;
  }

  const auto masks =
      SampleMasks(result.units.size(), config.samples, config.threshold, config.seed);
  const auto perturbations =
      ScorePerturbations(doc, result.units, masks, model, config.sigma);
  const std::size_t target = perturbations.front().scores.argmax();
  result.surrogate = FitSurrogate(perturbations, result.units.size(), target, config.ridge,
                                  config.top_k, config.sigma);

  const ImportanceScorer scorer(doc, result.units, model, result.surrogate);
  if (config.use_anchors && !config.seeds.empty()) {
    result.anchors = LearnAnchors(doc, config.seeds, scorer);
  }

  if (config.use_triplexes) {
    std::vector<Triplex> candidates(triplexes.begin(), triplexes.end());
    if (config.builtin_triplexes) {
      for (auto& t : ExtractBuiltinTriplexes(doc, doc_id, config.verbs)) {
        candidates.push_back(std::move(t));
      }
    }
    for (const auto& t : candidates) {
      if (!(t.confidence > config.min_confidence)) continue;
      if (t.aligned()) {
        result.triplexes.push_back(t);
      } else if (auto aligned = AlignTriplex(doc, t)) {
        result.triplexes.push_back(std::move(*aligned));
      } else {
        result.warnings.push_back("triplex (" + t.subject + "; " + t.predicate + "; " +
                                  t.object + ") does not align with the text; dropped");
      }
    }
  }

  if (config.use_ontology) {
    result.ontology_explanations = BuildOntologyExplanations(doc, result.tuples);
  }
  result.explanations = Compose(doc, result.ontology_explanations, result.anchors,
                                result.triplexes, scorer, config.compose);
  return result;
}

std::string SerializeExplanations(const ExplainResult& result) {
  std::string out;
  for (const auto& e : result.explanations) {
    Json tuples = Json::array();
    for (const auto& t : e.tuples) {
      tuples.push_back({{"first", t.first.phrase},
                        {"second", t.second.phrase},
                        {"source", t.source_concept},
                        {"target", t.target_concept},
                        {"distance", t.distance}});
    }
    Json words = Json::array();
    for (const auto& oe : result.ontology_explanations) {
      if (oe.sentence == e.sentence) words.push_back(oe.Render(result.doc));
    }
    Json triplexes = Json::array();
    for (const auto& t : e.triplexes) {
      triplexes.push_back({{"subject", t.subject},
                           {"predicate", t.predicate},
                           {"object", t.object},
                           {"confidence", t.confidence}});
    }
    Json record = {{"doc_id", result.doc_id},
                   {"sentence_idx", e.sentence},
                   {"text", e.text},
                   {"score", e.score},
                   {"rank", e.rank},
                   {"provenance",
                    {{"tuples", tuples},
                     {"ontology_explanations", words},
                     {"anchor", e.anchor ? Json(e.anchor->text) : Json(nullptr)},
                     {"triplexes", triplexes}}}};
    out += record.dump();
    out += '\n';
  }
  return out;
}

}  // namespace ontoexplain
