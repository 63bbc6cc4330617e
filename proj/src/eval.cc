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

#include "ontoexplain/eval.h"

#include <algorithm>
#include <set>

#include "ontoexplain/error.h"

namespace ontoexplain {
namespace {

constexpr Variant kVariants[] = {Variant::kOnml, Variant::kLimeMode, Variant::kOntologyOnly,
                                 Variant::kTriplexOnly};

// Per-document seed so that documents do not share mask streams.
std::uint64_t DocSeed(std::uint64_t seed, std::size_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ExplainConfig VariantConfig(const ExplainConfig& base, Variant v, std::uint64_t seed) {
  ExplainConfig c = base;
  c.seed = seed;
  switch (v) {
    case Variant::kOnml:
      break;
    case Variant::kLimeMode:
      c.lime_mode = true;
      c.use_ontology = false;
      c.use_anchors = false;
      c.use_triplexes = false;
      break;
    case Variant::kOntologyOnly:
      c.use_triplexes = false;
      break;
    case Variant::kTriplexOnly:
      c.lime_mode = true;
      c.use_ontology = false;
      c.compose.triplexes_without_ontology = true;
      break;
  }
  return c;
}

std::vector<std::pair<std::size_t, std::size_t>> MergedSpans(
    const TokenizedDoc& doc, const std::vector<std::size_t>& tokens) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = doc.tokens[tokens[i]];
    if (i > 0 && tokens[i] == tokens[i - 1] + 1) {
      out.back().second = t.end;
    } else {
      out.emplace_back(t.begin, t.end);
    }
  }
  return out;
}

}  // namespace

std::string VariantName(Variant v) {
  switch (v) {
    case Variant::kOnml:
      return "onml";
    case Variant::kLimeMode:
      return "lime_mode";
    case Variant::kOntologyOnly:
      return "ontology_only";
    case Variant::kTriplexOnly:
      return "triplex_only";
  }
  return "";
}

Variant ParseVariant(std::string_view name) {
  for (const Variant v : kVariants) {
    if (VariantName(v) == name) return v;
  }
  throw ValidationError("unknown explainer variant '" + std::string(name) + "'");
}

std::vector<Variant> AllVariants() { return {std::begin(kVariants), std::end(kVariants)}; }

const VariantSummary& EvalReport::Summary(Variant v, std::size_t k) const {
  for (const auto& s : summaries) {
    if (s.variant == v && s.k == k) return s;
  }
  throw ValidationError("report has no summary for " + VariantName(v) + " at k=" +
                        std::to_string(k));
}

EvalReport RunEval(const LabeledCorpus& corpus, const BlackBox& model,
                   const Ontology& ontology, const TriplexIndex& triplexes,
                   const EvalConfig& config) {
  if (corpus.records.empty()) throw ValidationError("evaluation corpus is empty");
  if (config.top_k.empty()) throw ValidationError("no top-k value given");
  for (const std::size_t k : config.top_k) {
    if (k == 0) throw ValidationError("top-k must be at least 1");
  }
  if (config.variants.empty()) throw ValidationError("no explainer variant selected");
  const auto& labels = model.labels();
  for (const auto& label : corpus.LabelSet()) {
    if (std::find(labels.begin(), labels.end(), label) == labels.end()) {
      throw ValidationError("corpus label '" + label + "' is not predicted by the model");
    }
  }

  // onml must run first: it fixes the word budget of lime_mode.
  std::vector<Variant> order = config.variants;
  std::stable_sort(order.begin(), order.end(), [](Variant a, Variant b) {
    return (a == Variant::kOnml) > (b == Variant::kOnml);
  });
  const bool has_onml =
      std::find(order.begin(), order.end(), Variant::kOnml) != order.end();

  EvalReport report;
  report.config = config;
  report.model_kind = model.kind();
  report.model_fingerprint = model.fingerprint();
  report.ontology_name = ontology.name();

  const std::vector<Triplex> no_triplexes;
  for (std::size_t index = 0; index < corpus.records.size(); ++index) {
    const LabeledRecord& record = corpus.records[index];
    const std::string id = record.id.empty() ? std::to_string(index) : record.id;
    DocRecord doc_record;
    doc_record.id = id;
    doc_record.text = record.text;
    doc_record.label = record.label;
    const ScoreVector original = model.Predict(record.text);
    const std::size_t predicted = original.argmax();
    doc_record.original_label = original.labels[predicted];
    doc_record.original_score = original[predicted];
    doc_record.original_correct = doc_record.original_label == record.label;

    const auto found = triplexes.find(id);
    const std::span<const Triplex> doc_triplexes =
        found == triplexes.end() ? std::span<const Triplex>(no_triplexes)
                                 : std::span<const Triplex>(found->second);
    const std::uint64_t seed = DocSeed(config.explain.seed, index);

    // Content words deleted by onml, per k.
    std::vector<std::size_t> budget(config.top_k.size(), 0);
    for (const Variant variant : order) {
      const ExplainConfig vc = VariantConfig(config.explain, variant, seed);
      const ExplainResult result =
          Explain(id, record.text, model, ontology, doc_triplexes, vc);
      for (const auto& w : result.warnings) {
        doc_record.warnings.push_back(VariantName(variant) + ": " + w);
      }
      const TokenizedDoc& doc = result.doc;
      const auto ranked = result.RankedUnits();

      for (std::size_t ki = 0; ki < config.top_k.size(); ++ki) {
        const std::size_t k = config.top_k[ki];
        VariantOutcome outcome;
        outcome.variant = variant;
        outcome.k = k;
        std::set<std::size_t> deleted;
        if (variant == Variant::kLimeMode) {
          // Word budget of onml's deletion; without onml, k words.
          std::size_t m = has_onml ? budget[ki] : k;
          for (std::size_t r = 0; r < ranked.size() && m > 0; ++r, --m) {
            const auto& unit = result.units.units[ranked[r]];
            deleted.insert(unit.tokens.begin(), unit.tokens.end());
            outcome.explanations.push_back(std::string(
                doc.Slice(unit.tokens.front(), unit.tokens.back() + 1)));
          }
        } else {
          for (std::size_t e = 0; e < result.explanations.size() && e < k; ++e) {
            const auto& expl = result.explanations[e];
            for (std::size_t t = expl.begin; t < expl.end; ++t) deleted.insert(t);
            outcome.explanations.push_back(expl.text);
          }
        }
        const std::vector<std::size_t> tokens(deleted.begin(), deleted.end());
        outcome.deleted_words = tokens.size();
        for (const std::size_t t : tokens) {
          if (!doc.tokens[t].is_stopword()) ++outcome.deleted_content_words;
        }
        if (variant == Variant::kOnml) budget[ki] = outcome.deleted_content_words;
        outcome.deleted_spans = MergedSpans(doc, tokens);

        if (tokens.empty()) {
          outcome.deleted_text = record.text;
          outcome.updated_label = doc_record.original_label;
          outcome.updated_score = doc_record.original_score;
        } else {
          std::vector<char> removed(doc.tokens.size(), 0);
          for (const std::size_t t : tokens) removed[t] = 1;
          outcome.deleted_text = DeleteTokens(doc, removed);
          const ScoreVector updated = model.Predict(outcome.deleted_text);
          outcome.updated_label = updated.labels[updated.argmax()];
          outcome.updated_score = updated[predicted];
          const ImportanceScorer scorer(doc, result.units, model, result.surrogate);
          outcome.score_change = scorer.MeanCoefficient(tokens) *
                                 (scorer.original_score() - updated[result.surrogate.target_class]);
        }
        outcome.updated_correct = outcome.updated_label == record.label;
        doc_record.outcomes.push_back(std::move(outcome));
      }
    }
    // Report outcomes in the configured variant order.
    std::stable_sort(doc_record.outcomes.begin(), doc_record.outcomes.end(),
                     [&](const VariantOutcome& a, const VariantOutcome& b) {
                       const auto pos = [&](Variant v) {
                         return std::find(config.variants.begin(), config.variants.end(), v) -
                                config.variants.begin();
                       };
                       return pos(a.variant) < pos(b.variant);
                     });
    report.docs.push_back(std::move(doc_record));
  }

  const double n = static_cast<double>(report.docs.size());
  for (const Variant variant : config.variants) {
    for (const std::size_t k : config.top_k) {
      VariantSummary s;
      s.variant = variant;
      s.k = k;
      double original_correct = 0.0;
      double updated_correct = 0.0;
      double score_change = 0.0;
      for (const auto& d : report.docs) {
        original_correct += d.original_correct ? 1.0 : 0.0;
        for (const auto& o : d.outcomes) {
          if (o.variant != variant || o.k != k) continue;
          updated_correct += o.updated_correct ? 1.0 : 0.0;
          score_change += o.score_change;
        }
      }
      s.original_accuracy = original_correct / n;
      s.updated_accuracy = updated_correct / n;
      s.ac = s.original_accuracy - s.updated_accuracy;
      s.sc = score_change / n;
      report.summaries.push_back(s);
    }
  }
  return report;
}

}  // namespace ontoexplain
