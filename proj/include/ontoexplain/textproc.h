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

#ifndef ONTOEXPLAIN_TEXTPROC_H_
#define ONTOEXPLAIN_TEXTPROC_H_

#include <compare>
#include <cstddef>
#include <filesystem>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ontoexplain {

class Ontology;

using WordSet = std::set<std::string, std::less<>>;

// Returned by LambdaDistance for spans in different sentences.
inline constexpr int kInfiniteDistance = std::numeric_limits<int>::max();

struct Token {
  std::string surface;
  std::string norm;
  int sent_idx = 0;
  // Position within the sentence over all tokens.
  int word_idx = 0;
  // Position within the sentence over non-stopword tokens; empty for
  // stopwords.
  std::optional<int> content_idx;
  // [begin, end) byte offsets into the document text.
  std::size_t begin = 0;
  std::size_t end = 0;

  bool is_stopword() const { return !content_idx.has_value(); }
};

struct TokenizedDoc {
  std::string text;
  std::vector<Token> tokens;
  int sentence_count = 0;

  // [first, last) token indices of sentence `s`.
  std::pair<std::size_t, std::size_t> SentenceRange(int s) const;
  // Verbatim text covering tokens [begin, end).
  std::string_view Slice(std::size_t begin, std::size_t end) const;
};

// Half-open token range [begin, end) of one sentence plus its normalized
// phrase (norms joined by single spaces).
struct UnitSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string phrase;

  std::size_t size() const { return end - begin; }
  bool Contains(std::size_t token) const { return token >= begin && token < end; }

  friend bool operator==(const UnitSpan& a, const UnitSpan& b) {
    return a.begin == b.begin && a.end == b.end;
  }
  friend std::strong_ordering operator<=>(const UnitSpan& a, const UnitSpan& b) {
    if (auto c = a.begin <=> b.begin; c != 0) return c;
    return a.end <=> b.end;
  }
};

struct TermMatch {
  UnitSpan span;
  std::string concept_id;
};

// Normalized words of `text` under the tokenizer's word rule, ignoring
// sentence structure.
std::vector<std::string> SplitWords(std::string_view text);

// Sentences end at '.', '!' or '?' (optionally followed by closing quotes or
// brackets) when followed by whitespace or end of text. Words are maximal runs
// of ASCII alphanumerics and non-ASCII bytes; an apostrophe or hyphen joins
// two such runs. Everything else separates words and is not a token. Norms
// are ASCII-lowercased surfaces. Sentences without words are dropped.
TokenizedDoc Tokenize(std::string_view text, const WordSet& stopwords);

// Span over tokens [begin, end) of `doc`. The range must be nonempty and
// inside one sentence; throws ValidationError otherwise.
UnitSpan MakeSpan(const TokenizedDoc& doc, std::size_t begin, std::size_t end);

// Greedy longest match, left to right, inside each sentence. Each matched
// span is reported once per concept whose lexicon holds it. Output is sorted
// by span, then concept id.
std::vector<TermMatch> MatchTerms(const TokenizedDoc& doc, const Ontology& ontology);

// Distance between two spans counted in non-stopword positions, using each
// span's first non-stopword token. kInfiniteDistance across sentences. Throws
// ValidationError for a span made only of stopwords.
int LambdaDistance(const TokenizedDoc& doc, const UnitSpan& a, const UnitSpan& b);

// Text with the tokens flagged in `removed` cut out by character span and
// whitespace runs collapsed to one space (leading/trailing trimmed).
std::string DeleteTokens(const TokenizedDoc& doc, std::span<const char> removed);

// Byte-stable JSON rendering of a tokenized document.
std::string SerializeTokens(const TokenizedDoc& doc);

// One lowercase entry per line; '#' starts a comment.
WordSet ParseWordList(std::string_view text);
WordSet LoadWordList(const std::filesystem::path& path);
// Like ParseWordList but keeps file order (seed lists are ordered).
std::vector<std::string> ParsePhraseList(std::string_view text);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace ontoexplain

#endif  // ONTOEXPLAIN_TEXTPROC_H_
