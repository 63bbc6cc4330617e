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

#include "ontoexplain/surrogate.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "ontoexplain/error.h"
#include "ontoexplain/simd/kernels.h"

namespace ontoexplain {
namespace {

// Union-find over span ids.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t Find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void Union(std::size_t a, std::size_t b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

double CosineKernel(std::span<const double> x, std::span<const double> z, double sigma) {
  double distance = 1.0;
  if (std::equal(x.begin(), x.end(), z.begin(), z.end())) {
    distance = 0.0;
  } else {
    const double zz = simd::Dot(z, z);
    const double xx = simd::Dot(x, x);
    if (zz > 0.0 && xx > 0.0) {
      const double cosine = simd::Dot(x, z) / std::sqrt(xx * zz);
      distance = 1.0 - std::clamp(cosine, 0.0, 1.0);
    }
  }
  return std::exp(-(distance * distance) / (sigma * sigma));
}

void CheckSigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ValidationError("kernel width sigma must be positive");
  }
}

// Lower-triangular Cholesky factor of the SPD matrix `a` (d x d), in place.
void CholeskyInPlace(std::vector<double>& a, std::size_t d) {
  double max_diag = 0.0;
  for (std::size_t i = 0; i < d; ++i) max_diag = std::max(max_diag, std::abs(a[i * d + i]));
  const double tolerance = 1e-13 * std::max(max_diag, 1e-300);
  for (std::size_t j = 0; j < d; ++j) {
    const std::span<const double> row_j(a.data() + j * d, j);
    double diag = a[j * d + j] - simd::Dot(row_j, row_j);
    if (!(diag > tolerance) || !std::isfinite(diag)) {
      throw NumericalError("surrogate normal equations are singular (pivot " +
                           std::to_string(j) + ")");
    }
    diag = std::sqrt(diag);
    a[j * d + j] = diag;
    for (std::size_t i = j + 1; i < d; ++i) {
      const std::span<const double> row_i(a.data() + i * d, j);
      a[i * d + j] = (a[i * d + j] - simd::Dot(row_i, row_j)) / diag;
    }
  }
}

void CholeskySolve(const std::vector<double>& l, std::size_t d, std::vector<double>& b) {
  for (std::size_t i = 0; i < d; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l[i * d + k] * b[k];
    b[i] = s / l[i * d + i];
  }
  for (std::size_t i = d; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < d; ++k) s -= l[k * d + i] * b[k];
    b[i] = s / l[i * d + i];
  }
}

}  // namespace

InterpretableUnits BuildUnits(const TokenizedDoc& doc,
                              std::span<const OntologyTuple> tuples) {
  std::map<UnitSpan, std::size_t> span_ids;
  for (const auto& t : tuples) {
    span_ids.emplace(t.first, span_ids.size());
    span_ids.emplace(t.second, span_ids.size());
  }
  DisjointSets groups(span_ids.size());
  for (const auto& t : tuples) groups.Union(span_ids.at(t.first), span_ids.at(t.second));

  std::map<std::size_t, InterpretableUnit> fused;  // root -> unit
  for (const auto& [span, id] : span_ids) {
    InterpretableUnit& unit = fused[groups.Find(id)];
    unit.fused = true;
    unit.spans.push_back(span);
    for (std::size_t i = span.begin; i < span.end; ++i) unit.tokens.push_back(i);
  }

  InterpretableUnits out;
  out.unit_of_token.assign(doc.tokens.size(), -1);
  std::vector<InterpretableUnit> units;
  std::vector<char> covered(doc.tokens.size(), 0);
  for (auto& [root, unit] : fused) {
    std::sort(unit.tokens.begin(), unit.tokens.end());
    std::sort(unit.spans.begin(), unit.spans.end());
    for (const std::size_t i : unit.tokens) covered[i] = 1;
    units.push_back(std::move(unit));
  }
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    if (covered[i] || doc.tokens[i].is_stopword()) continue;
    units.push_back({{i}, {MakeSpan(doc, i, i + 1)}, false});
  }
  std::sort(units.begin(), units.end(),
            [](const InterpretableUnit& a, const InterpretableUnit& b) {
              return a.tokens.front() < b.tokens.front();
            });
  for (std::size_t u = 0; u < units.size(); ++u) {
    for (const std::size_t i : units[u].tokens) out.unit_of_token[i] = static_cast<int>(u);
  }
  out.units = std::move(units);
  return out;
}

std::vector<Mask> SampleMasks(std::size_t unit_count, std::size_t n, double threshold,
                              std::uint64_t seed) {
  if (n == 0) throw ValidationError("sample count must be at least 1");
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw ValidationError("sampling threshold must lie in (0, 1)");
  }
  std::mt19937_64 rng(seed);
  std::vector<Mask> masks;
  masks.reserve(n);
  masks.emplace_back(unit_count, 1);
  for (std::size_t s = 1; s < n; ++s) {
    Mask mask(unit_count);
    for (std::size_t u = 0; u < unit_count; ++u) {
      const double draw = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      mask[u] = draw > threshold ? 1 : 0;
    }
    masks.push_back(std::move(mask));
  }
  return masks;
}

double KernelWeight(std::string_view x_text, std::string_view z_text, double sigma) {
  CheckSigma(sigma);
  std::map<std::string, std::size_t> vocabulary;
  const auto x_words = SplitWords(x_text);
  for (const auto& w : x_words) vocabulary.emplace(w, 0);
  std::size_t next = 0;
  for (auto& [word, index] : vocabulary) index = next++;
  std::vector<double> x(vocabulary.size(), 0.0);
  std::vector<double> z(vocabulary.size(), 0.0);
  for (const auto& w : x_words) x[vocabulary.at(w)] += 1.0;
  for (const auto& w : SplitWords(z_text)) {
    if (const auto it = vocabulary.find(w); it != vocabulary.end()) z[it->second] += 1.0;
  }
  return CosineKernel(x, z, sigma);
}

std::string ReconstructText(const TokenizedDoc& doc, const InterpretableUnits& units,
                            const Mask& mask) {
  std::vector<char> removed(doc.tokens.size(), 0);
  bool any = false;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    const int u = units.unit_of_token[i];
    if (u >= 0 && !mask[static_cast<std::size_t>(u)]) {
      removed[i] = 1;
      any = true;
    }
  }
  if (!any) return doc.text;
  return DeleteTokens(doc, removed);
}

std::vector<Perturbation> ScorePerturbations(const TokenizedDoc& doc,
                                             const InterpretableUnits& units,
                                             std::span<const Mask> masks,
                                             const BlackBox& model, double sigma) {
  CheckSigma(sigma);
  // Term-frequency vectors over the document vocabulary, in sorted word
  // order so that KernelWeight on the reconstructed strings agrees exactly.
  std::map<std::string, std::size_t> vocabulary;
  for (const auto& t : doc.tokens) vocabulary.emplace(t.norm, 0);
  std::size_t next = 0;
  for (auto& [word, index] : vocabulary) index = next++;
  std::vector<std::size_t> token_term(doc.tokens.size());
  std::vector<double> x(vocabulary.size(), 0.0);
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    token_term[i] = vocabulary.at(doc.tokens[i].norm);
    x[token_term[i]] += 1.0;
  }

  std::vector<Perturbation> out;
  out.reserve(masks.size());
  std::vector<std::string> texts;
  texts.reserve(masks.size());
  std::vector<double> z(vocabulary.size());
  for (const Mask& mask : masks) {
    if (mask.size() != units.size()) {
      throw ValidationError("mask length does not match the unit count");
    }
    std::fill(z.begin(), z.end(), 0.0);
    for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
      const int u = units.unit_of_token[i];
      if (u < 0 || mask[static_cast<std::size_t>(u)]) z[token_term[i]] += 1.0;
    }
    Perturbation p;
    p.mask = mask;
    p.text = ReconstructText(doc, units, mask);
    p.weight = CosineKernel(x, z, sigma);
    texts.push_back(p.text);
    out.push_back(std::move(p));
  }
  auto scores = model.PredictBatch(texts);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].scores = std::move(scores[i]);
  return out;
}

RidgeSolution SolveWeightedRidge(std::span<const double> rows,
                                 std::span<const double> targets,
                                 std::span<const double> weights, std::size_t d,
                                 double ridge) {
  const std::size_t n = targets.size();
  if (weights.size() != n || rows.size() != n * d) {
    throw ValidationError("design matrix, targets and weights disagree in size");
  }
  if (ridge < 0) throw ValidationError("ridge must be non-negative");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw NumericalError("sample weights sum to zero");

  std::vector<double> mean(d, 0.0);
  double y_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    simd::Axpy(weights[i] / total, rows.subspan(i * d, d), mean);
    y_mean += weights[i] * targets[i];
  }
  y_mean /= total;

  RidgeSolution out;
  if (d == 0) {
    out.intercept = y_mean;
    return out;
  }
  std::vector<double> centered(rows.begin(), rows.end());
  std::vector<double> rhs(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::span<double> row(centered.data() + i * d, d);
    simd::Axpy(-1.0, mean, row);
    simd::Axpy(weights[i] * (targets[i] - y_mean), row, rhs);
  }
  std::vector<double> gram(d * d);
  simd::WeightedGram(centered, weights, d, gram);
  for (std::size_t j = 0; j < d; ++j) gram[j * d + j] += ridge;
  CholeskyInPlace(gram, d);
  CholeskySolve(gram, d, rhs);
  out.intercept = y_mean - simd::Dot(rhs, mean);
  out.coefficients = std::move(rhs);
  return out;
}

SurrogateModel FitSurrogate(std::span<const Perturbation> perturbations,
                            std::size_t unit_count, std::size_t target_class,
                            double ridge, std::size_t top_k, double sigma) {
  if (unit_count == 0) throw ValidationError("cannot fit a surrogate over zero units");
  if (top_k == 0) throw ValidationError("top-k must be at least 1");
  std::set<Mask> distinct;
  for (const auto& p : perturbations) {
    if (p.mask.size() != unit_count) {
      throw ValidationError("mask length does not match the unit count");
    }
    if (target_class >= p.scores.size()) {
      throw ValidationError("target class out of range");
    }
    distinct.insert(p.mask);
  }
  if (distinct.size() < 2) {
    throw ValidationError("surrogate fit needs at least two distinct masks");
  }

  const std::size_t n = perturbations.size();
  std::vector<double> rows(n * unit_count);
  std::vector<double> targets(n);
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = perturbations[i];
    for (std::size_t u = 0; u < unit_count; ++u) rows[i * unit_count + u] = p.mask[u];
    targets[i] = p.scores[target_class];
    weights[i] = p.weight;
  }

  SurrogateModel g;
  g.target_class = target_class;
  g.target_label = perturbations.front().scores.labels.empty()
                       ? std::string()
                       : perturbations.front().scores.labels[target_class];
  g.kernel_sigma = sigma;
  g.ridge = ridge;
  g.sample_count = n;
  auto full = SolveWeightedRidge(rows, targets, weights, unit_count, ridge);
  g.coefficients = std::move(full.coefficients);
  g.intercept = full.intercept;

  std::vector<std::size_t> order(unit_count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&g](std::size_t a, std::size_t b) {
    return std::abs(g.coefficients[a]) > std::abs(g.coefficients[b]);
  });
  order.resize(std::min(top_k, unit_count));
  g.selected_units = order;

  const std::size_t k = order.size();
  std::vector<double> selected_rows(n * k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      selected_rows[i * k + j] = rows[i * unit_count + order[j]];
    }
  }
  auto refit = SolveWeightedRidge(selected_rows, targets, weights, k, ridge);
  g.selected_coefficients = std::move(refit.coefficients);
  g.selected_intercept = refit.intercept;
  return g;
}

ImportanceScorer::ImportanceScorer(const TokenizedDoc& doc,
                                   const InterpretableUnits& units,
                                   const BlackBox& model,
                                   const SurrogateModel& surrogate)
    : doc_(doc), units_(units), model_(model), surrogate_(surrogate) {
  original_score_ = model_.Predict(doc_.text)[surrogate_.target_class];
}

double ImportanceScorer::MeanCoefficient(std::span<const std::size_t> tokens) const {
  std::set<int> touched;
  for (const std::size_t i : tokens) {
    if (i >= units_.unit_of_token.size()) {
      throw ValidationError("token index " + std::to_string(i) + " outside the document");
    }
    if (units_.unit_of_token[i] >= 0) touched.insert(units_.unit_of_token[i]);
  }
  if (touched.empty()) return 0.0;
  double sum = 0.0;
  for (const int u : touched) {
    const auto idx = static_cast<std::size_t>(u);
    if (idx < surrogate_.coefficients.size()) sum += surrogate_.coefficients[idx];
  }
  return sum / static_cast<double>(touched.size());
}

double ImportanceScorer::ScoreWithout(std::span<const std::size_t> tokens) const {
  std::vector<char> removed(doc_.tokens.size(), 0);
  for (const std::size_t i : tokens) removed.at(i) = 1;
  return model_.Predict(DeleteTokens(doc_, removed))[surrogate_.target_class];
}

double ImportanceScorer::Score(std::span<const std::size_t> tokens) const {
  if (tokens.empty()) throw ValidationError("importance score of an empty word set");
  return MeanCoefficient(tokens) * (original_score_ - ScoreWithout(tokens));
}

std::vector<double> ImportanceScorer::ScoreBatch(
    std::span<const std::vector<std::size_t>> token_sets) const {
  std::vector<std::string> texts;
  texts.reserve(token_sets.size());
  for (const auto& tokens : token_sets) {
    if (tokens.empty()) throw ValidationError("importance score of an empty word set");
    std::vector<char> removed(doc_.tokens.size(), 0);
    for (const std::size_t i : tokens) removed.at(i) = 1;
    texts.push_back(DeleteTokens(doc_, removed));
  }
  const auto scores = model_.PredictBatch(texts);
  std::vector<double> out(token_sets.size());
  for (std::size_t i = 0; i < token_sets.size(); ++i) {
    out[i] = MeanCoefficient(token_sets[i]) *
             (original_score_ - scores[i][surrogate_.target_class]);
  }
  return out;
}

}  // namespace ontoexplain
