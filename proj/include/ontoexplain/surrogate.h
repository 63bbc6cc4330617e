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

#ifndef ONTOEXPLAIN_SURROGATE_H_
#define ONTOEXPLAIN_SURROGATE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ontoexplain/blackbox.h"
#include "ontoexplain/textproc.h"
#include "ontoexplain/tuples.h"

namespace ontoexplain {

// One coordinate of the surrogate's binary presence vector: a content word,
// or every span of a connected group of tuples sampled as a single element.
struct InterpretableUnit {
  // Sorted document token indices switched on and off together.
  std::vector<std::size_t> tokens;
  // Member spans; one single-token span for a plain word.
  std::vector<UnitSpan> spans;
  bool fused = false;
};

struct InterpretableUnits {
  std::vector<InterpretableUnit> units;
  // Unit index of each document token, -1 for tokens outside every unit
  // (stopwords that are not part of a tuple span).
  std::vector<int> unit_of_token;

  std::size_t size() const { return units.size(); }
};

// Tuples sharing a span are chained into one fused unit; the remaining
// content words become singleton units. Units are ordered by first token.
// An empty tuple list yields independent-word units.
InterpretableUnits BuildUnits(const TokenizedDoc& doc,
                              std::span<const OntologyTuple> tuples);

using Mask = std::vector<std::uint8_t>;

// Mask 0 keeps every unit. Every later mask keeps unit j iff a uniform draw
// in [0, 1) is strictly greater than `threshold`. Draws come from
// mt19937_64(seed) in sample-major, unit-minor order. Throws
// ValidationError for n == 0 or a threshold outside (0, 1).
std::vector<Mask> SampleMasks(std::size_t unit_count, std::size_t n, double threshold,
                              std::uint64_t seed);

// exp(-D^2 / sigma^2) with D the cosine distance between the term-frequency
// vectors of x and z over x's vocabulary. D = 1 when z has no words.
double KernelWeight(std::string_view x_text, std::string_view z_text, double sigma);

struct Perturbation {
  Mask mask;
  std::string text;
  double weight = 1.0;
  ScoreVector scores;
};

// Document text with the tokens of the units switched off in `mask`
// removed. The all-ones mask returns the original text unchanged.
std::string ReconstructText(const TokenizedDoc& doc, const InterpretableUnits& units,
                            const Mask& mask);

// Reconstructs, weights and scores every mask. Predictions go through one
// PredictBatch call.
std::vector<Perturbation> ScorePerturbations(const TokenizedDoc& doc,
                                             const InterpretableUnits& units,
                                             std::span<const Mask> masks,
                                             const BlackBox& model, double sigma);

struct SurrogateModel {
  // Ridge fit over all units.
  std::vector<double> coefficients;
  double intercept = 0.0;
  std::size_t target_class = 0;
  std::string target_label;
  double kernel_sigma = 0.0;
  double ridge = 0.0;
  std::size_t sample_count = 0;
  // Top-K units by |coefficient| (ties to the lower index), in rank order,
  // and the refit restricted to them.
  std::vector<std::size_t> selected_units;
  std::vector<double> selected_coefficients;
  double selected_intercept = 0.0;
};

struct RidgeSolution {
  std::vector<double> coefficients;
  double intercept = 0.0;
};

// argmin_{b, w} sum_i weights[i] (targets[i] - b - w . rows[i])^2 + ridge |w|^2
// over `rows` (n x d, row-major). Intercept unpenalized. Solved through the
// weighted-centered normal equations and a Cholesky factorization. Throws
// NumericalError when the system is singular.
RidgeSolution SolveWeightedRidge(std::span<const double> rows,
                                 std::span<const double> targets,
                                 std::span<const double> weights, std::size_t d,
                                 double ridge);

// Fits g against scores[target_class] of each perturbation, then keeps the
// top_k units and refits on them. Needs at least two distinct masks.
SurrogateModel FitSurrogate(std::span<const Perturbation> perturbations,
                            std::size_t unit_count, std::size_t target_class,
                            double ridge, std::size_t top_k, double sigma = 0.0);

// IC(r) = mean surrogate coefficient of the units touching r, times the drop
// of the target-class score when r's tokens are deleted. The original score
// is computed once at construction.
class ImportanceScorer {
 public:
  ImportanceScorer(const TokenizedDoc& doc, const InterpretableUnits& units,
                   const BlackBox& model, const SurrogateModel& surrogate);

  double original_score() const { return original_score_; }

  // Mean coefficient over units intersecting `tokens`; 0 when none do.
  double MeanCoefficient(std::span<const std::size_t> tokens) const;
  // Throws ValidationError when `tokens` is empty.
  double Score(std::span<const std::size_t> tokens) const;
  std::vector<double> ScoreBatch(std::span<const std::vector<std::size_t>> token_sets) const;
  // Target-class score of the text with `tokens` deleted.
  double ScoreWithout(std::span<const std::size_t> tokens) const;

 private:
  const TokenizedDoc& doc_;
  const InterpretableUnits& units_;
  const BlackBox& model_;
  const SurrogateModel& surrogate_;
  double original_score_ = 0.0;
};

}  // namespace ontoexplain

#endif  // ONTOEXPLAIN_SURROGATE_H_
