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

#ifndef ONTOEXPLAIN_EVAL_H_
#define ONTOEXPLAIN_EVAL_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ontoexplain/blackbox.h"
#include "ontoexplain/explainer.h"
#include "ontoexplain/ontology.h"
#include "ontoexplain/triplex.h"

namespace ontoexplain {

enum class Variant { kOnml, kLimeMode, kOntologyOnly, kTriplexOnly };

std::string VariantName(Variant v);
// Throws ValidationError for an unknown name.
Variant ParseVariant(std::string_view name);
std::vector<Variant> AllVariants();

struct EvalConfig {
  // Number of top explanations deleted; several values share one explain run.
  std::vector<std::size_t> top_k = {1};
  std::vector<Variant> variants = AllVariants();
  ExplainConfig explain = ExplainConfig::Default();
};

struct VariantOutcome {
  Variant variant = Variant::kOnml;
  std::size_t k = 1;
  // Texts of the explanations (or words) that were deleted.
  std::vector<std::string> explanations;
  // Merged [begin, end) byte ranges of the deleted tokens.
  std::vector<std::pair<std::size_t, std::size_t>> deleted_spans;
  std::size_t deleted_words = 0;
  std::size_t deleted_content_words = 0;
  std::string deleted_text;
  std::string updated_label;
  double updated_score = 0.0;
  bool updated_correct = false;
  double score_change = 0.0;
};

struct DocRecord {
  std::string id;
  std::string text;
  std::string label;
  std::string original_label;
  double original_score = 0.0;
  bool original_correct = false;
  std::vector<VariantOutcome> outcomes;
  std::vector<std::string> warnings;
};

struct VariantSummary {
  Variant variant = Variant::kOnml;
  std::size_t k = 1;
  double original_accuracy = 0.0;
  double updated_accuracy = 0.0;
  double ac = 0.0;
  double sc = 0.0;
};

struct EvalReport {
  EvalConfig config;
  std::string model_kind;
  std::string model_fingerprint;
  std::string ontology_name;
  std::vector<DocRecord> docs;
  std::vector<VariantSummary> summaries;

  const VariantSummary& Summary(Variant v, std::size_t k) const;
};

// Throws ValidationError for an empty corpus, an empty top_k list, k = 0, or
// corpus labels the model does not know.
EvalReport RunEval(const LabeledCorpus& corpus, const BlackBox& model,
                   const Ontology& ontology, const TriplexIndex& triplexes,
                   const EvalConfig& config);

enum class ReportFormat { kStructured, kTable, kHtml };

ReportFormat ParseReportFormat(std::string_view name);
std::string RenderReport(const EvalReport& report, ReportFormat format);
EvalReport ParseReport(std::string_view text, const std::string& source = "<report>");
// Throws Error when the path cannot be written.
void EmitReport(const EvalReport& report, ReportFormat format,
                const std::filesystem::path& path);
EvalReport LoadReport(const std::filesystem::path& path);

}  // namespace ontoexplain

#endif  // ONTOEXPLAIN_EVAL_H_
