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

#include "ontoexplain/synth.h"

#include <random>
#include <set>

#include "ontoexplain/error.h"
#include "ontoexplain/resources.h"

namespace ontoexplain {
namespace {

// Modulo draw; unlike the std distributions it is identical on every
// standard library, which keeps generated files stable.
std::size_t Draw(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

double Uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t DrawBetween(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + Draw(rng, hi - lo + 1);
}

std::string Capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

void CheckConfig(const SynthConfig& c) {
  if (c.agent_terms == 0 || c.effect_terms == 0 || c.filler_terms == 0) {
    throw ValidationError("synthetic vocabulary sizes must be positive");
  }
  if (c.min_sentences == 0 || c.min_sentences > c.max_sentences) {
    throw ValidationError("invalid synthetic sentence count range");
  }
  if (c.min_words < c.max_gap + 2 || c.min_words > c.max_words) {
    throw ValidationError("invalid synthetic sentence length range");
  }
  if (c.positive_fraction < 0.0 || c.positive_fraction > 1.0 ||
      c.negative_keyword_rate < 0.0 || c.negative_keyword_rate > 1.0) {
    throw ValidationError("synthetic rates must lie in [0, 1]");
  }
}

std::string Sentence(std::vector<std::string> words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += ' ';
    out += i == 0 ? Capitalize(words[i]) : words[i];
  }
  return out + ".";
}

}  // namespace

SynthVocabulary MakeSynthVocabulary(const SynthConfig& config) {
  CheckConfig(config);
  static constexpr const char* kOnsets[] = {"b", "d", "f", "g", "k", "l", "m", "n",
                                            "p", "r", "s", "t", "v", "z", "br", "tr"};
  static constexpr const char* kVowels[] = {"a", "e", "i", "o", "u"};
  std::mt19937_64 rng(config.vocabulary_seed);
  std::set<std::string> used;
  const WordSet& stopwords = DefaultStopwords();
  auto next_word = [&] {
    for (;;) {
      std::string w;
      const std::size_t syllables = DrawBetween(rng, 2, 3);
      for (std::size_t s = 0; s < syllables; ++s) {
        w += kOnsets[Draw(rng, std::size(kOnsets))];
        w += kVowels[Draw(rng, std::size(kVowels))];
      }
      if (!stopwords.contains(w) && used.insert(w).second) return w;
    }
  };
  SynthVocabulary v;
  for (std::size_t i = 0; i < config.agent_terms; ++i) v.agents.push_back(next_word());
  for (std::size_t i = 0; i < config.effect_terms; ++i) v.effects.push_back(next_word());
  for (std::size_t i = 0; i < config.filler_terms; ++i) v.fillers.push_back(next_word());
  return v;
}

Ontology MakeSynthOntology(const SynthConfig& config) {
  const SynthVocabulary v = MakeSynthVocabulary(config);
  // A related-free concept over part of the filler vocabulary gives term
  // matches that never form tuples.
  std::vector<std::string> context(v.fillers.begin(),
                                   v.fillers.begin() + (v.fillers.size() + 3) / 4);
  return Ontology::Create("synthetic-planted-pairs",
                          {{"agent", "Agent", v.agents},
                           {"effect", "Effect", v.effects},
                           {"context", "Context", context}},
                          {{"agent", "leads to", "effect"}},
                          {{"description", "generated planted-pair ontology"}});
}

LabeledCorpus MakeSynthCorpus(const SynthConfig& config) {
  const SynthVocabulary v = MakeSynthVocabulary(config);
  std::mt19937_64 rng(config.seed);
  auto filler = [&] { return v.fillers[Draw(rng, v.fillers.size())]; };
  auto plain_sentence = [&] {
    std::vector<std::string> words(DrawBetween(rng, config.min_words, config.max_words));
    for (auto& w : words) w = filler();
    return words;
  };

  LabeledCorpus corpus;
  for (std::size_t d = 0; d < config.docs; ++d) {
    const bool positive = Uniform(rng) < config.positive_fraction;
    const std::size_t n_sentences =
        DrawBetween(rng, config.min_sentences, config.max_sentences);
    std::vector<std::vector<std::string>> sentences;
    for (std::size_t s = 0; s < n_sentences; ++s) sentences.push_back(plain_sentence());
    auto& target = sentences[Draw(rng, n_sentences)];
    if (positive) {
      const std::size_t gap = Draw(rng, config.max_gap + 1);
      const std::size_t start = Draw(rng, target.size() - gap - 1);
      target[start] = v.agents[Draw(rng, v.agents.size())];
      target[start + gap + 1] = v.effects[Draw(rng, v.effects.size())];
    } else if (Uniform(rng) < config.negative_keyword_rate) {
      const bool agent = Draw(rng, 2) == 0;
      const auto& pool = agent ? v.agents : v.effects;
      target[Draw(rng, target.size())] = pool[Draw(rng, pool.size())];
    }
    std::string text;
    for (const auto& words : sentences) {
      if (!text.empty()) text += ' ';
      text += Sentence(words);
    }
    corpus.records.push_back({"s" + std::to_string(config.seed) + "-" + std::to_string(d),
                              std::move(text), positive ? kPositiveLabel : kNegativeLabel});
  }
  return corpus;
}

}  // namespace ontoexplain
