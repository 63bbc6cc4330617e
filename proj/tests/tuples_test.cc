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

#include "ontoexplain/tuples.h"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>
#include <tuple>

#include "ontoexplain/error.h"
#include "ontoexplain/resources.h"
#include "oracles.h"
#include "test_util.h"

namespace ontoexplain {
namespace {

using testing::DataPath;
using testing::MakeCase;
using testing::Oracle;
using testing::RandomCase;
using testing::OracleTuple;
using testing::RandomIndex;
using testing::Text;
using testing::kDrugSentence;

using PairKey = std::pair<std::string, std::string>;

std::set<PairKey> WordPairs(const std::vector<OntologyTuple>& tuples) {
  std::set<PairKey> out;
  for (const auto& t : tuples) out.emplace(t.first.phrase, t.second.phrase);
  return out;
}

TEST(TuplesTest, WorkedExample) {
  const Ontology o = LoadOntology(DataPath("drug_abuse.onto"));
  const TokenizedDoc doc = Tokenize(kDrugSentence, DefaultStopwords());
  const auto tuples = ExtractTuples(doc, o, 3);
  EXPECT_EQ(WordPairs(tuples),
            (std::set<PairKey>{{"smoke", "addiction"}, {"smoke", "headache"}}));
  ASSERT_EQ(tuples.size(), 2u);
  EXPECT_EQ(tuples[0].source_concept, "abuse_behavior");
  EXPECT_EQ(tuples[0].target_concept, "side_effect");
  EXPECT_EQ(tuples[1].target_concept, "symptom");
  EXPECT_EQ(tuples[1].distance, 3);
}

TEST(TuplesTest, GammaZeroIsEmptyInPractice) {
  const Ontology o = LoadOntology(DataPath("drug_abuse.onto"));
  EXPECT_TRUE(ExtractTuples(Tokenize(kDrugSentence, DefaultStopwords()), o, 0).empty());
  EXPECT_THROW(ExtractTuples(Tokenize(kDrugSentence, DefaultStopwords()), o, -1),
               ValidationError);
}

TEST(TuplesTest, SelfRelationNeedsDistinctSpans) {
  const Ontology o = ParseOntology("[concepts]\na|A|red\n[relations]\na|r|a\n");
  EXPECT_TRUE(ExtractTuples(Tokenize("red", WordSet{}), o, 5).empty());
  EXPECT_EQ(ExtractTuples(Tokenize("red red", WordSet{}), o, 5).size(), 2u);
}

TEST(TuplesTest, MatchesBruteForceOracle) {
  std::mt19937_64 rng(1234);
  for (int round = 0; round < 1500; ++round) {
    const RandomCase c = MakeCase(rng);
    const Ontology o = Ontology::Create("random", c.concepts, c.relations);
    const TokenizedDoc doc = Tokenize(Text(c), c.stopwords);
    std::set<OracleTuple> got;
    const auto tuples = ExtractTuples(doc, o, c.gamma);
    for (const auto& t : tuples) {
      got.emplace(t.first.begin, t.first.end, t.second.begin, t.second.end, t.source_concept,
                  t.target_concept, t.distance);
    }
    EXPECT_EQ(got.size(), tuples.size()) << "duplicates in round " << round;
    ASSERT_EQ(got, Oracle(c)) << "round " << round << ": " << Text(c);
  }
}

TEST(TuplesTest, Properties) {
  std::mt19937_64 rng(77);
  for (int round = 0; round < 400; ++round) {
    RandomCase c = MakeCase(rng);
    const Ontology o = Ontology::Create("random", c.concepts, c.relations);
    const TokenizedDoc doc = Tokenize(Text(c), c.stopwords);
    std::vector<std::vector<OntologyTuple>> by_gamma;
    for (int g = 0; g <= 6; ++g) by_gamma.push_back(ExtractTuples(doc, o, g));
    for (int g = 0; g < 6; ++g) {
      for (const auto& t : by_gamma[g]) {
        EXPECT_NE(std::find(by_gamma[g + 1].begin(), by_gamma[g + 1].end(), t),
                  by_gamma[g + 1].end());
      }
    }
    for (const auto& t : by_gamma[6]) {
      EXPECT_EQ(doc.tokens[t.first.begin].sent_idx, doc.tokens[t.second.begin].sent_idx);
      EXPECT_TRUE(o.HasEdge(t.source_concept, t.target_concept));
      // The reverse pair exists exactly when the reverse edge does.
      const bool reverse_present = std::any_of(
          by_gamma[6].begin(), by_gamma[6].end(), [&](const OntologyTuple& u) {
            return u.first == t.second && u.second == t.first &&
                   u.source_concept == t.target_concept && u.target_concept == t.source_concept;
          });
      EXPECT_EQ(reverse_present, o.HasEdge(t.target_concept, t.source_concept));
    }
    EXPECT_TRUE(std::is_sorted(by_gamma[6].begin(), by_gamma[6].end(),
                               [&](const OntologyTuple& x, const OntologyTuple& y) {
                                 return std::tuple(x.sentence(doc), x.first, x.second) <
                                        std::tuple(y.sentence(doc), y.first, y.second);
                               }));
  }
}

}  // namespace
}  // namespace ontoexplain
