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

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "ontoexplain/error.h"
#include "ontoexplain/resources.h"

namespace ontoexplain {
namespace {

bool SameSpans(const ExplanationSlot& a, const ExplanationSlot& b) {
  return a.spans == b.spans;
}

bool ShareConcept(const ExplanationSlot& a, const ExplanationSlot& b) {
  for (const auto& c : a.concepts) {
    if (std::binary_search(b.concepts.begin(), b.concepts.end(), c)) return true;
  }
  return false;
}

ExplanationSlot MergeSlots(const ExplanationSlot& a, const ExplanationSlot& b) {
  ExplanationSlot out;
  std::set_union(a.spans.begin(), a.spans.end(), b.spans.begin(), b.spans.end(),
                 std::back_inserter(out.spans));
  std::set_union(a.concepts.begin(), a.concepts.end(), b.concepts.begin(),
                 b.concepts.end(), std::back_inserter(out.concepts));
  return out;
}

std::set<UnitSpan> SpanSet(const OntologyExplanation& e) {
  std::set<UnitSpan> out;
  for (const auto& slot : e.slots) out.insert(slot.spans.begin(), slot.spans.end());
  return out;
}

bool TupleLess(const OntologyTuple& x, const OntologyTuple& y) {
  return std::tie(x.first, x.second, x.source_concept, x.target_concept) <
         std::tie(y.first, y.second, y.source_concept, y.target_concept);
}

OntologyExplanation Combine(const OntologyExplanation& a, const OntologyExplanation& b,
                            std::vector<ExplanationSlot> slots) {
  OntologyExplanation out;
  out.sentence = a.sentence;
  out.slots = std::move(slots);
  out.tuples = a.tuples;
  out.tuples.insert(out.tuples.end(), b.tuples.begin(), b.tuples.end());
  std::sort(out.tuples.begin(), out.tuples.end(), TupleLess);
  return out;
}

bool CanonicalLess(const OntologyExplanation& a, const OntologyExplanation& b) {
  const auto key = [](const OntologyExplanation& e) {
    std::vector<std::pair<std::vector<UnitSpan>, std::vector<std::string>>> k;
    for (const auto& s : e.slots) k.emplace_back(s.spans, s.concepts);
    return k;
  };
  return key(a) < key(b);
}

// Rule (a)-(d) applied to the ordered pair (x, y), or nullopt.
std::optional<OntologyExplanation> TryMerge(const OntologyExplanation& x,
                                            const OntologyExplanation& y, int rule) {
  const std::size_t nx = x.slots.size();
  const std::size_t ny = y.slots.size();
  switch (rule) {
    case 0: {  // (a)
      if (nx != ny) return std::nullopt;
      for (std::size_t i = 0; i + 1 < nx; ++i) {
        if (!SameSpans(x.slots[i], y.slots[i])) return std::nullopt;
      }
      if (SameSpans(x.slots.back(), y.slots.back()) ||
          !ShareConcept(x.slots.back(), y.slots.back())) {
        return std::nullopt;
      }
      auto slots = x.slots;
      slots.back() = MergeSlots(x.slots.back(), y.slots.back());
      return Combine(x, y, std::move(slots));
    }
    case 1: {  // (b)
      if (nx != ny) return std::nullopt;
      for (std::size_t i = 1; i < nx; ++i) {
        if (!SameSpans(x.slots[i], y.slots[i])) return std::nullopt;
      }
      if (SameSpans(x.slots.front(), y.slots.front()) ||
          !ShareConcept(x.slots.front(), y.slots.front())) {
        return std::nullopt;
      }
      auto slots = x.slots;
      slots.front() = MergeSlots(x.slots.front(), y.slots.front());
      return Combine(x, y, std::move(slots));
    }
    case 2: {  // (c)
      if (!SameSpans(x.slots.back(), y.slots.front())) return std::nullopt;
      const auto seen = SpanSet(x);
      for (std::size_t i = 1; i < ny; ++i) {
        for (const auto& span : y.slots[i].spans) {
          if (seen.contains(span)) return std::nullopt;
        }
      }
      auto slots = x.slots;
      slots.back().concepts.clear();
      std::set_union(x.slots.back().concepts.begin(), x.slots.back().concepts.end(),
                     y.slots.front().concepts.begin(), y.slots.front().concepts.end(),
                     std::back_inserter(slots.back().concepts));
      slots.insert(slots.end(), y.slots.begin() + 1, y.slots.end());
      return Combine(x, y, std::move(slots));
    }
    case 3: {  // (d)
      const auto big = SpanSet(x);
      for (const auto& span : SpanSet(y)) {
        if (!big.contains(span)) return std::nullopt;
      }
      return Combine(x, y, x.slots);
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::size_t> OntologyExplanation::Tokens() const {
  std::set<std::size_t> tokens(causal_tokens.begin(), causal_tokens.end());
  for (const auto& slot : slots) {
    for (const auto& span : slot.spans) {
      for (std::size_t i = span.begin; i < span.end; ++i) tokens.insert(i);
    }
  }
  return {tokens.begin(), tokens.end()};
}

std::vector<std::string> OntologyExplanation::Words(const TokenizedDoc& doc) const {
  // (text position, rendered item)
  std::vector<std::pair<std::size_t, std::string>> items;
  for (const auto& slot : slots) {
    std::string item;
    for (const auto& span : slot.spans) {
      if (!item.empty()) item += " and/or ";
      item += doc.Slice(span.begin, span.end);
    }
    items.emplace_back(slot.spans.front().begin, std::move(item));
  }
  for (const std::size_t i : causal_tokens) items.emplace_back(i, doc.tokens[i].surface);
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::string> out;
  for (auto& [pos, item] : items) out.push_back(std::move(item));
  return out;
}

std::string OntologyExplanation::Render(const TokenizedDoc& doc) const {
  std::string out = "{";
  const auto words = Words(doc);
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += ", ";
    out += words[i];
  }
  return out + "}";
}

std::vector<OntologyExplanation> MergeTuples(const TokenizedDoc& doc,
                                             std::span<const OntologyTuple> tuples) {
  if (tuples.empty()) return {};
  const int sentence = tuples.front().sentence(doc);
  std::map<std::pair<UnitSpan, UnitSpan>, OntologyExplanation> by_pair;
  for (const auto& t : tuples) {
    if (t.sentence(doc) != sentence || doc.tokens[t.second.begin].sent_idx != sentence) {
      throw ValidationError("MergeTuples expects tuples from a single sentence");
    }
    auto& e = by_pair[{t.first, t.second}];
    if (e.slots.empty()) {
      e.sentence = sentence;
      e.slots = {{{t.first}, {}}, {{t.second}, {}}};
    }
    auto add = [](std::vector<std::string>& v, const std::string& c) {
      if (!std::binary_search(v.begin(), v.end(), c)) {
        v.insert(std::upper_bound(v.begin(), v.end(), c), c);
      }
    };
    add(e.slots[0].concepts, t.source_concept);
    add(e.slots[1].concepts, t.target_concept);
    e.tuples.push_back(t);
  }
  std::vector<OntologyExplanation> expls;
  for (auto& [pair, e] : by_pair) {
    std::sort(e.tuples.begin(), e.tuples.end(), TupleLess);
    e.tuples.erase(std::unique(e.tuples.begin(), e.tuples.end()), e.tuples.end());
    expls.push_back(std::move(e));
  }

  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(expls.begin(), expls.end(), CanonicalLess);
    for (int rule = 0; rule < 4 && !changed; ++rule) {
      for (std::size_t i = 0; i < expls.size() && !changed; ++i) {
        for (std::size_t j = 0; j < expls.size() && !changed; ++j) {
          if (i == j) continue;
          auto merged = TryMerge(expls[i], expls[j], rule);
          if (!merged) continue;
          expls[std::min(i, j)] = std::move(*merged);
          expls.erase(expls.begin() + static_cast<std::ptrdiff_t>(std::max(i, j)));
          changed = true;
        }
      }
    }
  }
  std::sort(expls.begin(), expls.end(), CanonicalLess);
  return expls;
}

OntologyExplanation InsertCausalWords(const TokenizedDoc& doc, OntologyExplanation expl) {
  const auto tokens = expl.Tokens();
  if (tokens.empty()) return expl;
  const WordSet& causal = CausalWords();
  std::set<std::size_t> added(expl.causal_tokens.begin(), expl.causal_tokens.end());
  for (std::size_t i = tokens.front() + 1; i < tokens.back(); ++i) {
    if (std::binary_search(tokens.begin(), tokens.end(), i)) continue;
    if (causal.contains(doc.tokens[i].norm)) added.insert(i);
  }
  expl.causal_tokens.assign(added.begin(), added.end());
  return expl;
}

std::vector<OntologyExplanation> BuildOntologyExplanations(
    const TokenizedDoc& doc, std::span<const OntologyTuple> tuples) {
  std::map<int, std::vector<OntologyTuple>> by_sentence;
  for (const auto& t : tuples) by_sentence[t.sentence(doc)].push_back(t);
  std::vector<OntologyExplanation> out;
  for (auto& [s, group] : by_sentence) {
    for (auto& e : MergeTuples(doc, group)) {
      out.push_back(InsertCausalWords(doc, std::move(e)));
    }
  }
  return out;
}

std::vector<Explanation> ComposeSpans(const TokenizedDoc& doc,
                                      std::span<const OntologyExplanation> ontology_expls,
                                      std::span<const Anchor> anchors,
                                      std::span<const Triplex> triplexes,
                                      const ComposeOptions& options) {
  std::vector<Explanation> out;
  for (int s = 0; s < doc.sentence_count; ++s) {
    Explanation e;
    e.sentence = s;
    std::set<std::size_t> positions;
    bool has_ontology = false;
    for (const auto& oe : ontology_expls) {
      if (oe.sentence != s) continue;
      has_ontology = true;
      for (const std::size_t i : oe.Tokens()) positions.insert(i);
      e.tuples.insert(e.tuples.end(), oe.tuples.begin(), oe.tuples.end());
    }
    for (const auto& a : anchors) {
      if (a.sentence == s) e.anchor = a;
    }
    std::vector<Triplex> sentence_triplexes;
    for (const auto& t : triplexes) {
      if (t.aligned() && t.sentence == s) sentence_triplexes.push_back(t);
    }
    const bool use_triplexes =
        has_ontology || (options.triplexes_without_ontology && !sentence_triplexes.empty());
    if (!has_ontology && !use_triplexes && !e.anchor) continue;

    if (use_triplexes) {
      for (const auto& t : sentence_triplexes) {
        for (const auto* span : {&*t.subject_span, &*t.predicate_span, &*t.object_span}) {
          for (std::size_t i = span->begin; i < span->end; ++i) positions.insert(i);
        }
      }
      e.triplexes = std::move(sentence_triplexes);
    }
    if (e.anchor) {
      for (std::size_t i = e.anchor->span.begin; i < e.anchor->span.end; ++i) {
        positions.insert(i);
      }
    }
    e.begin = *positions.begin();
    e.end = *positions.rbegin() + 1;
    e.text = std::string(doc.Slice(e.begin, e.end));
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<Explanation> Compose(const TokenizedDoc& doc,
                                 std::span<const OntologyExplanation> ontology_expls,
                                 std::span<const Anchor> anchors,
                                 std::span<const Triplex> triplexes,
                                 const ImportanceScorer& scorer,
                                 const ComposeOptions& options) {
  auto out = ComposeSpans(doc, ontology_expls, anchors, triplexes, options);
  std::vector<std::vector<std::size_t>> token_sets;
  for (const auto& e : out) {
    std::vector<std::size_t> tokens(e.end - e.begin);
    std::iota(tokens.begin(), tokens.end(), e.begin);
    token_sets.push_back(std::move(tokens));
  }
  if (!token_sets.empty()) {
    const auto scores = scorer.ScoreBatch(token_sets);
    for (std::size_t i = 0; i < out.size(); ++i) out[i].score = scores[i];
  }
  std::stable_sort(out.begin(), out.end(), [](const Explanation& a, const Explanation& b) {
    return a.score > b.score;
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i) + 1;
  return out;
}

}  // namespace ontoexplain
