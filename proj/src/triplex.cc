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

#include "ontoexplain/triplex.h"

#include <sstream>

#include "json.hpp"
#include "ontoexplain/error.h"
#include "ontoexplain/resources.h"

namespace ontoexplain {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kMaxChunkWords = 4;

bool IsArticle(std::string_view norm) {
  return norm == "a" || norm == "an" || norm == "the";
}

// First start index of `words` inside tokens [first, last), or npos.
std::size_t FindRun(const TokenizedDoc& doc, std::size_t first, std::size_t last,
                    const std::vector<std::string>& words) {
  if (words.empty()) return std::string::npos;
  for (std::size_t i = first; i + words.size() <= last; ++i) {
    bool match = true;
    for (std::size_t k = 0; k < words.size() && match; ++k) {
      match = doc.tokens[i + k].norm == words[k];
    }
    if (match) return i;
  }
  return std::string::npos;
}

// True when the text between tokens i-1 and i closes a clause.
bool ClauseBreakBefore(const TokenizedDoc& doc, std::size_t i) {
  const std::string_view gap = std::string_view(doc.text).substr(
      doc.tokens[i - 1].end, doc.tokens[i].begin - doc.tokens[i - 1].end);
  return gap.find_first_of(",;:()[]") != std::string_view::npos;
}

}  // namespace

TriplexIndex ParseTriplexes(std::string_view jsonl, double min_confidence,
                            const std::string& source) {
  TriplexIndex index;
  std::istringstream in{std::string(jsonl)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(source, line_no, e.what());
    }
    Triplex t;
    try {
      t.doc_id = j.at("doc_id").is_string() ? j.at("doc_id").get<std::string>()
                                            : j.at("doc_id").dump();
      t.subject = j.at("subject").get<std::string>();
      t.predicate = j.at("predicate").get<std::string>();
      t.object = j.at("object").get<std::string>();
      t.confidence = j.at("confidence").get<double>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(source, line_no, e.what());
    }
    if (!(t.confidence >= 0.0 && t.confidence <= 1.0)) {
      throw ParseError(source, line_no, "confidence outside [0, 1]");
    }
    if (t.confidence > min_confidence) index[t.doc_id].push_back(std::move(t));
  }
  return index;
}

TriplexIndex LoadTriplexes(const std::filesystem::path& path, double min_confidence) {
  return ParseTriplexes(ReadFile(path), min_confidence, path.string());
}

std::string SerializeTriplexes(const std::vector<Triplex>& triplexes) {
  std::string out;
  for (const auto& t : triplexes) {
    Json j;
    j["doc_id"] = t.doc_id;
    j["subject"] = t.subject;
    j["predicate"] = t.predicate;
    j["object"] = t.object;
    j["confidence"] = t.confidence;
    out += j.dump() + "\n";
  }
  return out;
}

std::optional<Triplex> AlignTriplex(const TokenizedDoc& doc, const Triplex& triplex) {
  const auto subject = SplitWords(triplex.subject);
  const auto predicate = SplitWords(triplex.predicate);
  const auto object = SplitWords(triplex.object);
  for (int s = 0; s < doc.sentence_count; ++s) {
    const auto [first, last] = doc.SentenceRange(s);
    const std::size_t si = FindRun(doc, first, last, subject);
    const std::size_t pi = FindRun(doc, first, last, predicate);
    const std::size_t oi = FindRun(doc, first, last, object);
    if (si == std::string::npos || pi == std::string::npos || oi == std::string::npos) {
      continue;
    }
    Triplex out = triplex;
    out.sentence = s;
    out.subject_span = MakeSpan(doc, si, si + subject.size());
    out.predicate_span = MakeSpan(doc, pi, pi + predicate.size());
    out.object_span = MakeSpan(doc, oi, oi + object.size());
    return out;
  }
  return std::nullopt;
}

std::vector<Triplex> ExtractBuiltinTriplexes(const TokenizedDoc& doc,
                                             const std::string& doc_id,
                                             const WordSet& verbs) {
  const WordSet& causal = CausalWords();
  std::vector<Triplex> out;
  for (int s = 0; s < doc.sentence_count; ++s) {
    const auto [first, last] = doc.SentenceRange(s);
    std::size_t i = first;
    while (i < last) {
      if (!verbs.contains(doc.tokens[i].norm)) {
        ++i;
        continue;
      }
      const std::size_t verb_begin = i;
      std::size_t verb_end = i + 1;
      while (verb_end < last && verbs.contains(doc.tokens[verb_end].norm) &&
             !ClauseBreakBefore(doc, verb_end)) {
        ++verb_end;
      }
      i = verb_end;

      std::size_t subject_begin = verb_begin;
      while (subject_begin > first && verb_begin - subject_begin < kMaxChunkWords &&
             !ClauseBreakBefore(doc, subject_begin)) {
        const Token& t = doc.tokens[subject_begin - 1];
        if (verbs.contains(t.norm) || causal.contains(t.norm)) break;
        if (t.is_stopword() && !IsArticle(t.norm)) break;
        --subject_begin;
        if (IsArticle(t.norm)) break;
      }
      std::size_t object_end = verb_end;
      while (object_end < last && object_end - verb_end < kMaxChunkWords &&
             !ClauseBreakBefore(doc, object_end)) {
        const Token& t = doc.tokens[object_end];
        if (verbs.contains(t.norm) || causal.contains(t.norm)) break;
        if (t.is_stopword() && !(IsArticle(t.norm) && object_end == verb_end)) break;
        ++object_end;
      }
      if (subject_begin == verb_begin || object_end == verb_end) continue;

      Triplex t;
      t.doc_id = doc_id;
      t.subject = std::string(doc.Slice(subject_begin, verb_begin));
      t.predicate = std::string(doc.Slice(verb_begin, verb_end));
      t.object = std::string(doc.Slice(verb_end, object_end));
      t.confidence = kBuiltinConfidence;
      t.sentence = s;
      t.subject_span = MakeSpan(doc, subject_begin, verb_begin);
      t.predicate_span = MakeSpan(doc, verb_begin, verb_end);
      t.object_span = MakeSpan(doc, verb_end, object_end);
      out.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace ontoexplain
