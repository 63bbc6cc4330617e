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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "ontoexplain/error.h"
#include "ontoexplain/resources.h"
#include "oracles.h"
#include "test_util.h"

namespace ontoexplain {
namespace {

using testing::DataPath;
using testing::FindPhrase;
using testing::OracleRidge;
using testing::RandomUniform;
using testing::WordWeightModel;
using testing::kDrugSentence;

struct DrugFixture {
  Ontology ontology = LoadOntology(DataPath("drug_abuse.onto"));
  TokenizedDoc doc = Tokenize(kDrugSentence, DefaultStopwords());
  std::vector<OntologyTuple> tuples = ExtractTuples(doc, ontology, 3);
  InterpretableUnits units = BuildUnits(doc, tuples);
};

std::size_t TokenOf(const TokenizedDoc& doc, const std::string& word, std::size_t from = 0) {
  return FindPhrase(doc, word, from).first;
}

TEST(BuildUnitsTest, SharedSpanTuplesFuseIntoOneUnit) {
  DrugFixture f;
  ASSERT_EQ(f.tuples.size(), 2u);
  const std::size_t smoke = TokenOf(f.doc, "smoke");
  const std::size_t addiction = TokenOf(f.doc, "addiction");
  const std::size_t headache = TokenOf(f.doc, "headache");
  const int fused = f.units.unit_of_token[smoke];
  ASSERT_GE(fused, 0);
  EXPECT_EQ(f.units.unit_of_token[addiction], fused);
  EXPECT_EQ(f.units.unit_of_token[headache], fused);
  const InterpretableUnit& u = f.units.units[static_cast<std::size_t>(fused)];
  EXPECT_TRUE(u.fused);
  EXPECT_EQ(u.tokens, (std::vector<std::size_t>{smoke, addiction, headache}));
  EXPECT_EQ(u.spans.size(), 3u);

  // Every other content word is its own unit; stopwords belong to none.
  std::size_t content = 0;
  for (std::size_t i = 0; i < f.doc.tokens.size(); ++i) {
    const bool in_tuple = i == smoke || i == addiction || i == headache;
    if (f.doc.tokens[i].content_idx.has_value()) ++content;
    if (in_tuple) continue;
    if (f.doc.tokens[i].content_idx.has_value()) {
      const int id = f.units.unit_of_token[i];
      ASSERT_GE(id, 0);
      EXPECT_EQ(f.units.units[static_cast<std::size_t>(id)].tokens,
                std::vector<std::size_t>{i});
      EXPECT_FALSE(f.units.units[static_cast<std::size_t>(id)].fused);
    } else {
      EXPECT_EQ(f.units.unit_of_token[i], -1) << f.doc.tokens[i].surface;
    }
  }
  EXPECT_EQ(f.units.size(), content - 3 + 1);
  for (std::size_t j = 1; j < f.units.size(); ++j) {
    EXPECT_LT(f.units.units[j - 1].tokens.front(), f.units.units[j].tokens.front());
  }
}

TEST(BuildUnitsTest, NoTuplesGivesWordUnits) {
  DrugFixture f;
  const InterpretableUnits plain = BuildUnits(f.doc, {});
  std::size_t content = 0;
  for (const auto& t : f.doc.tokens) content += t.content_idx.has_value() ? 1 : 0;
  EXPECT_EQ(plain.size(), content);
  for (const auto& u : plain.units) {
    EXPECT_EQ(u.tokens.size(), 1u);
    EXPECT_FALSE(u.fused);
  }
}

TEST(SampleMasksTest, FirstMaskKeepsEverything) {
  const auto masks = SampleMasks(7, 5, 0.5, 3);
  ASSERT_EQ(masks.size(), 5u);
  EXPECT_EQ(masks[0], Mask(7, 1));
  const auto single = SampleMasks(4, 1, 0.5, 3);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0], Mask(4, 1));
}

TEST(SampleMasksTest, InclusionRatesAndIndependence) {
  for (const double threshold : {0.5, 0.3}) {
    const std::size_t units = 12;
    const auto masks = SampleMasks(units, 10001, threshold, 11);
    std::vector<double> on(units, 0.0);
    double both = 0.0;
    for (std::size_t s = 1; s < masks.size(); ++s) {
      for (std::size_t u = 0; u < units; ++u) on[u] += masks[s][u];
      both += masks[s][2] & masks[s][7];
    }
    const double n = 10000.0;
    const double keep = 1.0 - threshold;
    for (std::size_t u = 0; u < units; ++u) EXPECT_NEAR(on[u] / n, keep, 0.02) << u;
    EXPECT_NEAR(both / n, keep * keep, 0.02);
  }
}

TEST(SampleMasksTest, DeterministicAndValidated) {
  EXPECT_EQ(SampleMasks(9, 50, 0.5, 21), SampleMasks(9, 50, 0.5, 21));
  EXPECT_NE(SampleMasks(9, 50, 0.5, 21), SampleMasks(9, 50, 0.5, 22));
  EXPECT_THROW(SampleMasks(3, 0, 0.5, 1), ValidationError);
  EXPECT_THROW(SampleMasks(3, 5, 0.0, 1), ValidationError);
  EXPECT_THROW(SampleMasks(3, 5, 1.0, 1), ValidationError);
}

TEST(KernelTest, HandComputedValues) {
  EXPECT_DOUBLE_EQ(KernelWeight("a b a", "a b a", 0.25), 1.0);
  // x = (a:2, b:1), z = (a:1): cos = 2 / sqrt(5).
  const double d = 1.0 - 2.0 / std::sqrt(5.0);
  EXPECT_NEAR(KernelWeight("a b a", "a", 0.25), std::exp(-d * d / 0.0625), 1e-14);
  // Words outside x's vocabulary do not count.
  EXPECT_NEAR(KernelWeight("a b a", "a zzz", 0.25), std::exp(-d * d / 0.0625), 1e-14);
  EXPECT_NEAR(KernelWeight("a b", "", 0.5), std::exp(-1.0 / 0.25), 1e-15);
  EXPECT_NEAR(KernelWeight("a b", "zzz", 0.5), std::exp(-1.0 / 0.25), 1e-15);
}

TEST(KernelTest, ScorePerturbationsUsesTheSameKernel) {
  DrugFixture f;
  const WordWeightModel model({{"smoke", 1.5}, {"weed", 0.7}});
  const auto masks = SampleMasks(f.units.size(), 40, 0.5, 5);
  const auto perturbations = ScorePerturbations(f.doc, f.units, masks, model, 0.25);
  ASSERT_EQ(perturbations.size(), masks.size());
  EXPECT_EQ(perturbations[0].text, f.doc.text);
  EXPECT_DOUBLE_EQ(perturbations[0].weight, 1.0);
  for (const auto& p : perturbations) {
    EXPECT_EQ(p.text, ReconstructText(f.doc, f.units, p.mask));
    EXPECT_NEAR(p.weight, KernelWeight(f.doc.text, p.text, 0.25), 1e-12);
    EXPECT_EQ(p.scores, model.Predict(p.text));
  }
}

TEST(RidgeTest, MatchesOracleOnExhaustiveMasks) {
  std::mt19937_64 rng(17);
  for (std::size_t d = 1; d <= 8; ++d) {
    for (const double ridge : {1e-3, 0.5}) {
      const std::size_t n = std::size_t{1} << d;
      std::vector<double> rows(n * d), targets(n), weights(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) rows[i * d + j] = (i >> j) & 1U;
        targets[i] = RandomUniform(rng);
        weights[i] = RandomUniform(rng, 0.05, 1.0);
      }
      const RidgeSolution got = SolveWeightedRidge(rows, targets, weights, d, ridge);
      const RidgeSolution want = OracleRidge(rows, targets, weights, d, ridge);
      ASSERT_EQ(got.coefficients.size(), d);
      EXPECT_NEAR(got.intercept, want.intercept, 1e-9) << d;
      for (std::size_t j = 0; j < d; ++j) {
        EXPECT_NEAR(got.coefficients[j], want.coefficients[j], 1e-9) << d << " " << j;
      }
    }
  }
}

TEST(RidgeTest, RecoversLinearTargets) {
  const std::size_t d = 6;
  const std::vector<double> truth = {0.4, -0.2, 0.0, 0.9, -0.6, 0.1};
  const auto masks = SampleMasks(d, 400, 0.5, 2);
  std::vector<double> rows, targets, weights;
  for (const auto& m : masks) {
    double t = 0.3;
    for (std::size_t j = 0; j < d; ++j) {
      rows.push_back(m[j]);
      t += truth[j] * m[j];
    }
    targets.push_back(t);
    weights.push_back(1.0);
  }
  const RidgeSolution got = SolveWeightedRidge(rows, targets, weights, d, 1e-9);
  EXPECT_NEAR(got.intercept, 0.3, 1e-6);
  for (std::size_t j = 0; j < d; ++j) EXPECT_NEAR(got.coefficients[j], truth[j], 1e-6);
}

TEST(RidgeTest, SingularSystemRejected) {
  // A constant column with no penalty cannot be separated from the intercept.
  const std::vector<double> rows = {1, 1, 1, 1};
  const std::vector<double> t = {0.1, 0.2, 0.3, 0.4};
  const std::vector<double> w = {1, 1, 1, 1};
  EXPECT_THROW(SolveWeightedRidge(rows, t, w, 1, 0.0), NumericalError);
}

std::vector<Perturbation> LinearPerturbations(const std::vector<double>& truth,
                                              std::size_t n, std::uint64_t seed) {
  std::vector<Perturbation> out;
  for (const auto& m : SampleMasks(truth.size(), n, 0.5, seed)) {
    double p = 0.2;
    for (std::size_t j = 0; j < truth.size(); ++j) p += truth[j] * m[j];
    out.push_back({m, "", 1.0, {{p, 1.0 - p}, {"yes", "no"}}});
  }
  return out;
}

TEST(FitSurrogateTest, ConstantModelGivesZeroCoefficients) {
  DrugFixture f;
  const WordWeightModel flat({});
  const auto masks = SampleMasks(f.units.size(), 200, 0.5, 1);
  const auto perturbations = ScorePerturbations(f.doc, f.units, masks, flat, 0.25);
  const SurrogateModel g = FitSurrogate(perturbations, f.units.size(), 0, 1e-3, 3);
  for (const double c : g.coefficients) EXPECT_NEAR(c, 0.0, 1e-12);
  EXPECT_NEAR(g.intercept, 0.5, 1e-12);
}

TEST(FitSurrogateTest, TopKSelectionAndRefit) {
  const std::vector<double> truth = {0.05, -0.3, 0.0, 0.2, 0.01, -0.02, 0.25};
  const auto perturbations = LinearPerturbations(truth, 300, 4);
  const SurrogateModel g = FitSurrogate(perturbations, truth.size(), 0, 1e-8, 3);
  for (std::size_t j = 0; j < truth.size(); ++j) EXPECT_NEAR(g.coefficients[j], truth[j], 1e-5);
  EXPECT_EQ(g.selected_units, (std::vector<std::size_t>{1, 6, 3}));
  ASSERT_EQ(g.selected_coefficients.size(), 3u);
  EXPECT_EQ(g.target_class, 0u);
  EXPECT_EQ(g.target_label, "yes");
  EXPECT_EQ(g.sample_count, 300u);

  // The refit equals a direct ridge solve restricted to the kept columns.
  std::vector<double> rows, targets, weights;
  for (const auto& p : perturbations) {
    for (const std::size_t u : g.selected_units) rows.push_back(p.mask[u]);
    targets.push_back(p.scores[0]);
    weights.push_back(p.weight);
  }
  const RidgeSolution direct = SolveWeightedRidge(rows, targets, weights, 3, 1e-8);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_NEAR(g.selected_coefficients[j], direct.coefficients[j], 1e-12);
  }
  EXPECT_NEAR(g.selected_intercept, direct.intercept, 1e-12);

  const SurrogateModel all = FitSurrogate(perturbations, truth.size(), 0, 1e-8, 100);
  EXPECT_EQ(all.selected_units.size(), truth.size());
}

TEST(FitSurrogateTest, RejectsDegenerateInput) {
  const auto perturbations = LinearPerturbations({0.1, 0.2}, 20, 1);
  EXPECT_THROW(FitSurrogate(perturbations, 2, 0, 1e-3, 0), ValidationError);
  EXPECT_THROW(FitSurrogate(perturbations, 2, 5, 1e-3, 1), ValidationError);
  EXPECT_THROW(FitSurrogate(perturbations, 3, 0, 1e-3, 1), ValidationError);
  const std::vector<Perturbation> same(3, perturbations[0]);
  EXPECT_THROW(FitSurrogate(same, 2, 0, 1e-3, 1), ValidationError);
}

TEST(ImportanceTest, MatchesDirectComputation) {
  DrugFixture f;
  const WordWeightModel model({{"smoke", 2.0}, {"weed", 1.0}, {"juice", -0.5}});
  const auto masks = SampleMasks(f.units.size(), 500, 0.5, 8);
  const auto perturbations = ScorePerturbations(f.doc, f.units, masks, model, 0.25);
  const SurrogateModel g = FitSurrogate(perturbations, f.units.size(), 0, 1e-3, 5, 0.25);
  const ImportanceScorer scorer(f.doc, f.units, model, g);
  EXPECT_DOUBLE_EQ(scorer.original_score(), model.Predict(f.doc.text).scores[0]);

  const std::size_t weed = TokenOf(f.doc, "weed");
  const std::size_t juice = TokenOf(f.doc, "juice");
  const std::size_t smoke = TokenOf(f.doc, "smoke");
  const std::size_t the_and = TokenOf(f.doc, "and");
  const int uw = f.units.unit_of_token[weed];
  const int uj = f.units.unit_of_token[juice];
  const std::vector<std::size_t> pair = {weed, juice};
  const double mean = (g.coefficients[uw] + g.coefficients[uj]) / 2.0;
  EXPECT_DOUBLE_EQ(scorer.MeanCoefficient(pair), mean);
  std::vector<char> removed(f.doc.tokens.size(), 0);
  removed[weed] = removed[juice] = 1;
  const double without = model.Predict(DeleteTokens(f.doc, removed)).scores[0];
  EXPECT_DOUBLE_EQ(scorer.ScoreWithout(pair), without);
  EXPECT_NEAR(scorer.Score(pair), mean * (scorer.original_score() - without), 1e-15);

  // A stopword touches no unit; repeated tokens of one unit count once.
  const std::vector<std::size_t> stop = {the_and};
  EXPECT_EQ(scorer.MeanCoefficient(stop), 0.0);
  EXPECT_EQ(scorer.Score(stop), 0.0);
  const std::size_t addiction = TokenOf(f.doc, "addiction");
  const std::vector<std::size_t> fused = {smoke, addiction};
  EXPECT_DOUBLE_EQ(scorer.MeanCoefficient(fused),
                   g.coefficients[f.units.unit_of_token[smoke]]);

  // Smoke drives the model, so deleting it lowers the target score.
  EXPECT_GT(g.coefficients[f.units.unit_of_token[smoke]], 0.0);
  EXPECT_GT(scorer.Score(std::vector<std::size_t>{smoke}), 0.0);

  const std::vector<std::vector<std::size_t>> sets = {pair, stop, fused};
  const auto batch = scorer.ScoreBatch(sets);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    EXPECT_DOUBLE_EQ(batch[i], scorer.Score(sets[i]));
  }
  EXPECT_THROW(scorer.Score(std::vector<std::size_t>{}), ValidationError);
  EXPECT_THROW(scorer.MeanCoefficient(std::vector<std::size_t>{999}), ValidationError);
}

// With an additive model on unit presence, deleting a unit reduces the
// prediction by exactly that unit's contribution, and the surrogate recovers
// the same contribution.
TEST(ImportanceTest, AdditiveModelReduction) {
  DrugFixture f;
  const WordWeightModel model({{"weed", 0.8}, {"juice", -0.4}, {"orange", 0.3}});
  const auto masks = SampleMasks(f.units.size(), 1500, 0.5, 10);
  const auto perturbations = ScorePerturbations(f.doc, f.units, masks, model, 0.25);
  const SurrogateModel g = FitSurrogate(perturbations, f.units.size(), 0, 1e-3, 3, 0.25);
  const int weed = f.units.unit_of_token[TokenOf(f.doc, "weed")];
  const int juice = f.units.unit_of_token[TokenOf(f.doc, "juice")];
  EXPECT_GT(g.coefficients[weed], 0.05);
  EXPECT_LT(g.coefficients[juice], -0.02);
  EXPECT_EQ(g.selected_units.front(), static_cast<std::size_t>(weed));
}

}  // namespace
}  // namespace ontoexplain
