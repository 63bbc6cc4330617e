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

#ifndef ONTOEXPLAIN_TESTS_TEST_UTIL_H_
#define ONTOEXPLAIN_TESTS_TEST_UTIL_H_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "ontoexplain/blackbox.h"
#include "ontoexplain/resources.h"
#include "ontoexplain/textproc.h"
#include "ontoexplain/triplex.h"

namespace ontoexplain::testing {

inline std::filesystem::path DataPath(const std::string& relative) {
  return std::filesystem::path(ONTOEXPLAIN_DATA_DIR) / relative;
}

inline constexpr char kDrugSentence[] =
    "She uses orange juice and does not like weed. "
    "She knows that smoke causes addiction and headache.";

inline constexpr char kComplaint[] =
    "We were filling out all the forms in the application. However, there is a "
    "letter in saying loss mitigation application denied for not sending "
    "information to us.";

inline std::size_t RandomIndex(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline double RandomUniform(std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Token index range of the first occurrence of `words` (normalized).
inline std::pair<std::size_t, std::size_t> FindPhrase(const TokenizedDoc& doc,
                                                      const std::string& phrase,
                                                      std::size_t from = 0) {
  const auto words = SplitWords(phrase);
  for (std::size_t i = from; i + words.size() <= doc.tokens.size(); ++i) {
    bool match = true;
    for (std::size_t k = 0; k < words.size() && match; ++k) {
      match = doc.tokens[i + k].norm == words[k];
    }
    if (match) return {i, i + words.size()};
  }
  return {doc.tokens.size(), doc.tokens.size()};
}

inline Triplex MakeTriplex(std::string doc_id, std::string subject, std::string predicate,
                           std::string object, double confidence) {
  Triplex t;
  t.doc_id = std::move(doc_id);
  t.subject = std::move(subject);
  t.predicate = std::move(predicate);
  t.object = std::move(object);
  t.confidence = confidence;
  return t;
}

// Deterministic model whose target score depends on which words of a fixed
// weight table are present; scores are a two-class softmax.
class WordWeightModel final : public BlackBox {
 public:
  explicit WordWeightModel(std::vector<std::pair<std::string, double>> weights,
                           double bias = 0.0)
      : weights_(std::move(weights)), bias_(bias) {}

  const std::vector<std::string>& labels() const override { return labels_; }
  std::string kind() const override { return "test"; }
  std::string fingerprint() const override { return "word-weight"; }

  std::vector<ScoreVector> PredictBatch(std::span<const std::string> texts) const override {
    std::vector<ScoreVector> out;
    for (const auto& text : texts) {
      const auto words = SplitWords(text);
      double z = bias_;
      for (const auto& [w, v] : weights_) {
        for (const auto& word : words) {
          if (word == w) z += v;
        }
      }
      const double p = 1.0 / (1.0 + std::exp(-z));
      out.push_back({{p, 1.0 - p}, labels_});
    }
    return out;
  }

 private:
  std::vector<std::pair<std::string, double>> weights_;
  double bias_;
  std::vector<std::string> labels_ = {"yes", "no"};
};

}  // namespace ontoexplain::testing

#endif  // ONTOEXPLAIN_TESTS_TEST_UTIL_H_
