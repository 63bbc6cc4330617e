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


#include "ontoexplain/composer.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "ontoexplain/error.h"
#include "ontoexplain/resources.h"
#include "test_util.h"

namespace ontoexplain {
namespace {

using testing::DataPath;
using testing::FindPhrase;
using testing::kComplaint;
using testing::MakeTriplex;
using testing::RandomIndex;
using testing::RandomUniform;
using testing::WordWeightModel;

TokenizedDoc Doc(const std::string& text) { return Tokenize(text, DefaultStopwords()); }

UnitSpan Span(const TokenizedDoc& doc, const std::string& phrase, std::size_t from = 0) {
  const auto [b, e] = FindPhrase(doc, phrase, from);
  EXPECT_LT(b, doc.tokens.size()) << phrase;
  return MakeSpan(doc, b, e);
}

OntologyTuple Tup(const TokenizedDoc& doc, const std::string& a, const std::string& ca,
                  const std::string& b, const std::string& cb) {
  OntologyTuple t;
  t.first = Span(doc, a);
  t.second = Span(doc, b);
  t.source_concept = ca;
  t.target_concept = cb;
  t.distance = LambdaDistance(doc, t.first, t.second);
  return t;
}

std::vector<std::string> Rendered(const TokenizedDoc& doc,
                                  const std::vector<OntologyExplanation>& expls) {
  std::vector<std::string> out;
  for (const auto& e : expls) out.push_back(e.Render(doc));
  return out;
}

TEST(MergeTest, RuleASharedLastConcept) {
  const TokenizedDoc doc = Doc("She knows that smoke causes addiction and headache.");
  const std::vector<OntologyTuple> tuples = {
      Tup(doc, "smoke", "abuse", "addiction", "side_effect"),
      Tup(doc, "smoke", "abuse", "headache", "side_effect")};
  const auto merged = MergeTuples(doc, tuples);
  EXPECT_EQ(Rendered(doc, merged),
            std::vector<std::string>{"{smoke, addiction and/or headache}"});
  ASSERT_EQ(merged[0].slots.size(), 2u);
  EXPECT_EQ(merged[0].slots[1].concepts, std::vector<std::string>{"side_effect"});
  EXPECT_EQ(merged[0].tuples.size(), 2u);
}

TEST(MergeTest, DifferentConceptsDoNotMerge) {
  const TokenizedDoc doc = Doc("She knows that smoke causes addiction and headache.");
  const std::vector<OntologyTuple> tuples = {
      Tup(doc, "smoke", "abuse", "addiction", "side_effect"),
      Tup(doc, "smoke", "abuse", "headache", "symptom")};
  EXPECT_EQ(Rendered(doc, MergeTuples(doc, tuples)),
            (std::vector<std::string>{"{smoke, addiction}", "{smoke, headache}"}));
}

TEST(MergeTest, RuleBSharedFirstConcept) {
  const TokenizedDoc doc = Doc("Weed or smoke leads to addiction.");
  const std::vector<OntologyTuple> tuples = {
      Tup(doc, "weed", "drug", "addiction", "side_effect"),
      Tup(doc, "smoke", "drug", "addiction", "side_effect")};
  EXPECT_EQ(Rendered(doc, MergeTuples(doc, tuples)),
            std::vector<std::string>{"{Weed and/or smoke, addiction}"});
}

TEST(MergeTest, RuleCChainAndRuleDAbsorption) {
  const TokenizedDoc doc = Doc("Pills bring anxiety then insomnia.");
  const auto kl = Tup(doc, "pills", "drug", "anxiety", "symptom");
  const auto lm = Tup(doc, "anxiety", "symptom", "insomnia", "condition");
  const auto km = Tup(doc, "pills", "drug", "insomnia", "condition");
  const std::vector<OntologyTuple> chain = {kl, lm};
  EXPECT_EQ(Rendered(doc, MergeTuples(doc, chain)),
            std::vector<std::string>{"{Pills, anxiety, insomnia}"});
  const std::vector<OntologyTuple> triangle = {kl, lm, km};
  const auto merged = MergeTuples(doc, triangle);
  EXPECT_EQ(Rendered(doc, merged), std::vector<std::string>{"{Pills, anxiety, insomnia}"});
  EXPECT_EQ(merged[0].tuples.size(), 3u);
}

TEST(MergeTest, SameSpanPairStartsAsOneExplanation) {
  const TokenizedDoc doc = Doc("Smoke causes addiction.");
  const std::vector<OntologyTuple> tuples = {Tup(doc, "smoke", "a", "addiction", "b"),
                                             Tup(doc, "smoke", "c", "addiction", "d")};
  const auto merged = MergeTuples(doc, tuples);
  ASSERT_EQ(merged.size(), 1u);
  EXPECT_EQ(merged[0].slots[0].concepts, (std::vector<std::string>{"a", "c"}));
  EXPECT_EQ(merged[0].slots[1].concepts, (std::vector<std::string>{"b", "d"}));
}

TEST(MergeTest, MixedSentencesRejected) {
  const TokenizedDoc doc = Doc("Smoke hurts. Addiction follows.");
  const std::vector<OntologyTuple> tuples = {Tup(doc, "smoke", "a", "addiction", "b")};
  EXPECT_THROW(MergeTuples(doc, tuples), ValidationError);
  EXPECT_TRUE(MergeTuples(doc, {}).empty());
}

// Random tuple sets over a small vocabulary; every permutation must yield
// the same explanations.
TEST(MergeTest, ResultIndependentOfInputOrder) {
  const TokenizedDoc doc = Doc("alpha beta gamma delta epsilon zeta eta theta");
  const std::vector<std::string> words = {"alpha", "beta",  "gamma", "delta",
                                          "epsilon", "zeta", "eta",  "theta"};
  const std::vector<std::string> concepts = {"c1", "c2", "c3"};
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<OntologyTuple> tuples;
    const std::size_t n = 1 + RandomIndex(rng, 5);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t a = RandomIndex(rng, words.size());
      std::size_t b = RandomIndex(rng, words.size());
      if (a == b) b = (b + 1) % words.size();
      if (a > b) std::swap(a, b);
      tuples.push_back(Tup(doc, words[a], concepts[a % 3], words[b],
                           concepts[RandomIndex(rng, 2) + (b % 2)]));
    }
    const auto reference = Rendered(doc, MergeTuples(doc, tuples));
    std::vector<std::size_t> perm(tuples.size());
    std::iota(perm.begin(), perm.end(), 0);
    int checked = 0;
    do {
      std::vector<OntologyTuple> permuted;
      for (const std::size_t p : perm) permuted.push_back(tuples[p]);
      ASSERT_EQ(Rendered(doc, MergeTuples(doc, permuted)), reference) << trial;
    } while (std::next_permutation(perm.begin(), perm.end()) && ++checked < 40);

    // Every input word survives the merge.
    std::set<std::size_t> in_words, out_words;
    for (const auto& t : tuples) {
      in_words.insert(t.first.begin);
      in_words.insert(t.second.begin);
    }
    for (const auto& e : MergeTuples(doc, tuples)) {
      for (const std::size_t i : e.Tokens()) out_words.insert(i);
    }
    EXPECT_EQ(in_words, out_words);
  }
}

TEST(CausalTest, InsertsOnlyStrictlyInside) {
  const TokenizedDoc doc = Doc("Because smoke is cheap, thus addiction grows because.");
  const std::vector<OntologyTuple> tuples = {
      Tup(doc, "smoke", "abuse", "addiction", "side_effect")};
  const auto merged = MergeTuples(doc, tuples);
  const OntologyExplanation with = InsertCausalWords(doc, merged[0]);
  ASSERT_EQ(with.causal_tokens.size(), 1u);
  EXPECT_EQ(doc.tokens[with.causal_tokens[0]].norm, "thus");
  EXPECT_EQ(with.Render(doc), "{smoke, thus, addiction}");
  const auto built = BuildOntologyExplanations(doc, tuples);
  ASSERT_EQ(built.size(), 1u);
  EXPECT_EQ(built[0].causal_tokens, with.causal_tokens);
}

Anchor MakeAnchor(const TokenizedDoc& doc, const std::string& phrase, std::size_t from = 0) {
  Anchor a;
  a.span = Span(doc, phrase, from);
  a.sentence = doc.tokens[a.span.begin].sent_idx;
  a.text = std::string(doc.Slice(a.span.begin, a.span.end));
  return a;
}

TEST(ComposeTest, ComplaintComposition) {
  const TokenizedDoc doc = Doc(kComplaint);
  const Ontology ontology = LoadOntology(DataPath("consumer_complaint.onto"));
  const auto tuples = ExtractTuples(doc, ontology, 10);
  ASSERT_FALSE(tuples.empty());
  const auto expls = BuildOntologyExplanations(doc, tuples);
  const TriplexIndex index = LoadTriplexes(DataPath("examples/complaint_triplexes.jsonl"), 0.7);
  std::vector<Triplex> aligned;
  for (const auto& t : index.at("c1")) aligned.push_back(*AlignTriplex(doc, t));
  const std::size_t s1 = doc.SentenceRange(1).first;
  const std::vector<Anchor> anchors = {MakeAnchor(doc, "not sending information", s1)};
  const auto out = ComposeSpans(doc, expls, anchors, aligned);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].sentence, 1);
  EXPECT_EQ(out[0].text,
            "a letter in saying loss mitigation application denied for not sending "
            "information");
  EXPECT_EQ(out[0].triplexes.size(), 1u);
  ASSERT_TRUE(out[0].anchor.has_value());
  EXPECT_EQ(out[0].tuples.size(), tuples.size());
}

TEST(ComposeTest, AnchorOnlyAndTriplexOnlySentences) {
  const TokenizedDoc doc = Doc(
      "Smoke causes addiction. I do not like it at all. The bank sent a letter.");
  const std::vector<OntologyTuple> tuples = {
      Tup(doc, "smoke", "abuse", "addiction", "side_effect")};
  const auto expls = BuildOntologyExplanations(doc, tuples);
  const std::vector<Anchor> anchors = {MakeAnchor(doc, "not like")};
  const std::vector<Triplex> triplexes = {
      *AlignTriplex(doc, MakeTriplex("d", "the bank", "sent", "a letter", 0.9))};

  const auto out = ComposeSpans(doc, expls, anchors, triplexes);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].text, "Smoke causes addiction");
  EXPECT_EQ(out[1].text, "not like");
  EXPECT_TRUE(out[1].tuples.empty());

  ComposeOptions options;
  options.triplexes_without_ontology = true;
  const auto with_triplexes = ComposeSpans(doc, {}, {}, triplexes, options);
  ASSERT_EQ(with_triplexes.size(), 1u);
  EXPECT_EQ(with_triplexes[0].text, "The bank sent a letter");
  EXPECT_TRUE(ComposeSpans(doc, {}, {}, triplexes).empty());
}

// Random documents, tuples and anchors: each explanation is the contiguous
// hull of its parts, scores agree with the scorer, ranks follow scores.
TEST(ComposeTest, HullScoresAndRanks) {
  const std::vector<std::string> pool = {"smoke", "weed", "pills", "pain", "sleep",
                                         "the", "not", "and", "very", "drink"};
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    std::string text;
    for (int s = 0; s < 3; ++s) {
      const std::size_t length = 2 + RandomIndex(rng, 7);
      for (std::size_t i = 0; i < length; ++i) text += pool[RandomIndex(rng, pool.size())] + " ";
      text += ". ";
    }
    const TokenizedDoc doc = Doc(text);
    std::vector<OntologyTuple> tuples;
    std::vector<Anchor> anchors;
    for (int s = 0; s < doc.sentence_count; ++s) {
      const auto [first, last] = doc.SentenceRange(s);
      std::vector<std::size_t> content;
      for (std::size_t i = first; i < last; ++i) {
        if (doc.tokens[i].content_idx) content.push_back(i);
      }
      if (content.size() >= 2 && RandomUniform(rng) < 0.7) {
        const std::size_t a = content[RandomIndex(rng, content.size() - 1)];
        const std::size_t b = content.back();
        if (a != b) {
          OntologyTuple t{MakeSpan(doc, a, a + 1), MakeSpan(doc, b, b + 1), "x", "y", 1};
          tuples.push_back(t);
        }
      }
      if (RandomUniform(rng) < 0.5) {
        const std::size_t b = first + RandomIndex(rng, last - first);
        const std::size_t e = b + 1 + RandomIndex(rng, last - b);
        Anchor anchor;
        anchor.sentence = s;
        anchor.span = MakeSpan(doc, b, e);
        anchors.push_back(anchor);
      }
    }
    const auto expls = BuildOntologyExplanations(doc, tuples);
    const WordWeightModel model({{"smoke", 1.0}, {"weed", 0.6}, {"pain", -0.8}});
    const InterpretableUnits units = BuildUnits(doc, tuples);
    SurrogateModel g;
    g.coefficients.resize(units.size());
    for (double& c : g.coefficients) c = RandomUniform(rng, -1.0, 1.0);
    const ImportanceScorer scorer(doc, units, model, g);
    const auto out = Compose(doc, expls, anchors, {}, scorer);

    std::set<int> expected_sentences;
    for (const auto& e : expls) expected_sentences.insert(e.sentence);
    for (const auto& a : anchors) expected_sentences.insert(a.sentence);
    ASSERT_EQ(out.size(), expected_sentences.size()) << text;
    for (std::size_t r = 0; r < out.size(); ++r) {
      const Explanation& x = out[r];
      EXPECT_EQ(x.rank, static_cast<int>(r) + 1);
      if (r > 0) {
        EXPECT_GE(out[r - 1].score, x.score);
      }
      std::vector<std::size_t> parts;
      for (const auto& e : expls) {
        if (e.sentence != x.sentence) continue;
        for (const std::size_t i : e.Tokens()) parts.push_back(i);
        for (const std::size_t i : e.causal_tokens) parts.push_back(i);
      }
      for (const auto& a : anchors) {
        if (a.sentence != x.sentence) continue;
        for (std::size_t i = a.span.begin; i < a.span.end; ++i) parts.push_back(i);
      }
      ASSERT_FALSE(parts.empty());
      EXPECT_EQ(x.begin, *std::min_element(parts.begin(), parts.end()));
      EXPECT_EQ(x.end, *std::max_element(parts.begin(), parts.end()) + 1);
      EXPECT_EQ(x.text, doc.Slice(x.begin, x.end));
      const auto [first, last] = doc.SentenceRange(x.sentence);
      EXPECT_GE(x.begin, first);
      EXPECT_LE(x.end, last);
      std::vector<std::size_t> range;
      for (std::size_t i = x.begin; i < x.end; ++i) range.push_back(i);
      EXPECT_NEAR(x.score, scorer.Score(range), 1e-12);
    }
  }
}

}  // namespace
}  // namespace ontoexplain
