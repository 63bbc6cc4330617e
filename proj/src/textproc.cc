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

#include "ontoexplain/textproc.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ontoexplain/error.h"
#include "ontoexplain/ontology.h"

namespace ontoexplain {
namespace {

bool IsWordByte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z') || c >= 0x80;
}

bool IsJoiner(unsigned char c) { return c == '\'' || c == '-'; }

bool IsSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsTerminal(unsigned char c) { return c == '.' || c == '!' || c == '?'; }

bool IsCloser(unsigned char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']' || c == '}';
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

// End offset of the word starting at `i`.
std::size_t ScanWord(std::string_view text, std::size_t i) {
  const std::size_t n = text.size();
  while (i < n) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (IsWordByte(c)) {
      ++i;
    } else if (IsJoiner(c) && i + 1 < n &&
               IsWordByte(static_cast<unsigned char>(text[i + 1]))) {
      ++i;
    } else {
      break;
    }
  }
  return i;
}

// True when the terminal punctuation at `i` closes a sentence.
bool ClosesSentence(std::string_view text, std::size_t i) {
  std::size_t j = i + 1;
  while (j < text.size() && (IsTerminal(static_cast<unsigned char>(text[j])) ||
                             IsCloser(static_cast<unsigned char>(text[j])))) {
    ++j;
  }
  return j >= text.size() || IsSpace(static_cast<unsigned char>(text[j]));
}

std::string JoinNorms(const TokenizedDoc& doc, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) out.push_back(' ');
    out += doc.tokens[i].norm;
  }
  return out;
}

const Token& AnchorToken(const TokenizedDoc& doc, const UnitSpan& span) {
  for (std::size_t i = span.begin; i < span.end; ++i) {
    if (!doc.tokens[i].is_stopword()) return doc.tokens[i];
  }
  throw ValidationError("span '" + span.phrase +
                        "' has no content word to measure distance from");
}

}  // namespace

std::pair<std::size_t, std::size_t> TokenizedDoc::SentenceRange(int s) const {
  const auto lo = std::partition_point(
      tokens.begin(), tokens.end(), [s](const Token& t) { return t.sent_idx < s; });
  const auto hi = std::partition_point(
      lo, tokens.end(), [s](const Token& t) { return t.sent_idx <= s; });
  return {static_cast<std::size_t>(lo - tokens.begin()),
          static_cast<std::size_t>(hi - tokens.begin())};
}

std::string_view TokenizedDoc::Slice(std::size_t begin, std::size_t end) const {
  if (begin >= end) return {};
  const std::size_t from = tokens[begin].begin;
  const std::size_t to = tokens[end - 1].end;
  return std::string_view(text).substr(from, to - from);
}

std::vector<std::string> SplitWords(std::string_view text) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < text.size()) {
    if (IsWordByte(static_cast<unsigned char>(text[i]))) {
      const std::size_t end = ScanWord(text, i);
      words.push_back(Lower(text.substr(i, end - i)));
      i = end;
    } else {
      ++i;
    }
  }
  return words;
}

TokenizedDoc Tokenize(std::string_view text, const WordSet& stopwords) {
  TokenizedDoc doc;
  doc.text = std::string(text);
  int sentence = 0;
  int word_idx = 0;
  int content_idx = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (IsWordByte(c)) {
      const std::size_t end = ScanWord(text, i);
      Token token;
      token.surface = std::string(text.substr(i, end - i));
      token.norm = Lower(token.surface);
      token.sent_idx = sentence;
      token.word_idx = word_idx++;
      if (!stopwords.contains(token.norm)) token.content_idx = content_idx++;
      token.begin = i;
      token.end = end;
      doc.tokens.push_back(std::move(token));
      i = end;
      continue;
    }
    if (IsTerminal(c) && ClosesSentence(text, i) && word_idx > 0) {
      ++sentence;
      word_idx = 0;
      content_idx = 0;
    }
    ++i;
  }
  doc.sentence_count = doc.tokens.empty() ? 0 : doc.tokens.back().sent_idx + 1;
  return doc;
}

UnitSpan MakeSpan(const TokenizedDoc& doc, std::size_t begin, std::size_t end) {
  if (begin >= end || end > doc.tokens.size()) {
    throw ValidationError("invalid token range [" + std::to_string(begin) +
                          ", " + std::to_string(end) + ")");
  }
  if (doc.tokens[begin].sent_idx != doc.tokens[end - 1].sent_idx) {
    throw ValidationError("token range [" + std::to_string(begin) + ", " +
                          std::to_string(end) + ") crosses a sentence boundary");
  }
  return UnitSpan{begin, end, JoinNorms(doc, begin, end)};
}

std::vector<TermMatch> MatchTerms(const TokenizedDoc& doc, const Ontology& ontology) {
  std::vector<TermMatch> matches;
  const std::size_t window = ontology.max_term_words();
  if (window == 0) return matches;
  std::vector<std::string> phrase;
  for (int s = 0; s < doc.sentence_count; ++s) {
    const auto [first, last] = doc.SentenceRange(s);
    std::size_t i = first;
    while (i < last) {
      std::size_t best_len = 0;
      std::vector<std::string> best_concepts;
      const std::size_t max_len = std::min(window, last - i);
      phrase.clear();
      for (std::size_t len = 1; len <= max_len; ++len) {
        phrase.push_back(doc.tokens[i + len - 1].norm);
        auto concepts = ontology.ConceptsOfTerm(phrase);
        if (!concepts.empty()) {
          best_len = len;
          best_concepts = std::move(concepts);
        }
      }
      if (best_len == 0) {
        ++i;
        continue;
      }
      const UnitSpan span = MakeSpan(doc, i, i + best_len);
      for (auto& id : best_concepts) matches.push_back({span, std::move(id)});
      i += best_len;
    }
  }
  return matches;
}

int LambdaDistance(const TokenizedDoc& doc, const UnitSpan& a, const UnitSpan& b) {
  const Token& ta = AnchorToken(doc, a);
  const Token& tb = AnchorToken(doc, b);
  if (ta.sent_idx != tb.sent_idx) return kInfiniteDistance;
  return std::abs(*ta.content_idx - *tb.content_idx);
}

std::string DeleteTokens(const TokenizedDoc& doc, std::span<const char> removed) {
  std::string kept;
  kept.reserve(doc.text.size());
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    if (i >= removed.size() || !removed[i]) continue;
    kept.append(doc.text, cursor, doc.tokens[i].begin - cursor);
    cursor = doc.tokens[i].end;
  }
  kept.append(doc.text, cursor, std::string::npos);

  std::string out;
  out.reserve(kept.size());
  bool pending_space = false;
  for (const char ch : kept) {
    if (IsSpace(static_cast<unsigned char>(ch))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(ch);
  }
  return out;
}

std::string SerializeTokens(const TokenizedDoc& doc) {
  nlohmann::ordered_json j;
  j["sentence_count"] = doc.sentence_count;
  auto& tokens = j["tokens"] = nlohmann::ordered_json::array();
  for (const Token& t : doc.tokens) {
    nlohmann::ordered_json tj;
    tj["surface"] = t.surface;
    tj["norm"] = t.norm;
    tj["sent"] = t.sent_idx;
    tj["word"] = t.word_idx;
    tj["content"] = t.content_idx ? nlohmann::ordered_json(*t.content_idx)
                                  : nlohmann::ordered_json(nullptr);
    tj["span"] = {t.begin, t.end};
    tokens.push_back(std::move(tj));
  }
  return j.dump();
}

std::vector<std::string> ParsePhraseList(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::string phrase = NormalizeTerm(line);
    if (phrase.empty()) continue;
    if (std::find(out.begin(), out.end(), phrase) == out.end()) {
      out.push_back(std::move(phrase));
    }
  }
  return out;
}

WordSet ParseWordList(std::string_view text) {
  WordSet out;
  for (auto& w : ParsePhraseList(text)) out.insert(std::move(w));
  return out;
}

WordSet LoadWordList(const std::filesystem::path& path) {
  return ParseWordList(ReadFile(path));
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace ontoexplain
