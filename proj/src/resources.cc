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

#include "ontoexplain/resources.h"

namespace ontoexplain {
namespace {

// Function words only. Pronouns, negations and causal connectives are
// content words: they carry meaning for the classifier and for anchors.
constexpr const char* kStopwords[] = {
    "a",       "about",  "above", "after", "again",  "all",     "also",
    "am",      "an",     "and",   "any",   "are",    "as",      "at",
    "be",      "been",   "before", "being", "below", "between", "both",
    "but",     "by",     "can",   "could", "did",    "do",      "does",
    "doing",   "down",   "during", "each", "few",    "for",     "from",
    "further", "had",    "has",   "have",  "having", "here",    "how",
    "if",      "in",     "into",  "is",    "it",     "its",     "just",
    "may",     "might",  "more",  "most",  "must",   "nor",     "of",
    "off",     "on",     "once",  "only",  "onto",   "or",      "other",
    "out",     "over",   "own",   "s",     "same",   "shall",   "should",
    "so",      "some",   "such",  "t",     "than",   "that",    "the",
    "then",    "there",  "these", "this",  "those",  "through", "to",
    "too",     "under",  "up",    "very",  "was",    "were",    "what",
    "where",   "which",  "who",   "whom",  "whose",  "why",     "will",
    "would",   "yet",
};

constexpr const char* kAnchorSeeds[] = {"not", "no", "illegal", "against", "without"};

constexpr const char* kVerbs[] = {
    "applied",   "applies",   "apply",     "approved",  "approves",
    "asked",     "asks",      "became",    "becomes",   "bought",
    "buys",      "called",    "calls",     "caused",    "causes",
    "charged",   "charges",   "claimed",   "claims",    "closed",
    "closes",    "denied",    "denies",    "deny",      "failed",
    "fails",     "foreclosed", "forecloses", "gave",    "gets",
    "gives",     "got",       "increased", "increases", "informed",
    "informs",   "knew",      "knows",     "lost",      "loses",
    "made",      "makes",     "needed",    "needs",     "offered",
    "offers",    "owed",      "owes",      "paid",      "pays",
    "received",  "receives",  "refused",   "refuses",   "rejected",
    "rejects",   "reported",  "reports",   "requested", "requests",
    "returned",  "returns",   "said",      "says",      "sent",
    "sends",     "sold",      "sells",     "stopped",   "stops",
    "submitted", "submits",   "takes",     "told",      "tells",
    "took",      "wanted",    "wants",
};

constexpr const char* kCausalWords[] = {
    "because", "since",     "therefore", "while",     "whereas",
    "thus",    "thereby",   "meanwhile", "however",   "hence",
    "otherwise", "consequently", "when", "whenever",
};

template <std::size_t N>
WordSet ToSet(const char* const (&words)[N]) {
  return WordSet(std::begin(words), std::end(words));
}

}  // namespace

const WordSet& DefaultStopwords() {
  static const WordSet set = ToSet(kStopwords);
  return set;
}

const std::vector<std::string>& DefaultAnchorSeeds() {
  static const std::vector<std::string> seeds(std::begin(kAnchorSeeds),
                                              std::end(kAnchorSeeds));
  return seeds;
}

const WordSet& DefaultVerbs() {
  static const WordSet set = ToSet(kVerbs);
  return set;
}

const WordSet& CausalWords() {
  static const WordSet set = ToSet(kCausalWords);
  return set;
}

std::string FormatWordList(const std::vector<std::string>& words,
                           const std::string& header) {
  std::string out = "# " + header + "\n";
  for (const auto& w : words) out += w + "\n";
  return out;
}

}  // namespace ontoexplain
