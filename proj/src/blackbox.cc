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

#include "ontoexplain/blackbox.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ontoexplain/error.h"
#include "ontoexplain/simd/kernels.h"
#include "ontoexplain/textproc.h"

namespace ontoexplain {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kModelFormat = "ontoexplain.tfidf-ovr";
constexpr int kModelVersion = 1;

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double Softplus(double z) {
  if (z > 0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

double SparseDot(const SparseVector& x, std::span<const double> w) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.indices.size(); ++i) sum += x.values[i] * w[x.indices[i]];
  return sum;
}

}  // namespace

std::size_t ScoreVector::argmax() const {
  return static_cast<std::size_t>(
      std::max_element(scores.begin(), scores.end()) - scores.begin());
}

void CheckScoreVector(const ScoreVector& v) {
  if (v.scores.size() < 2) throw ValidationError("score vector needs at least 2 classes");
  if (v.scores.size() != v.labels.size()) {
    throw ValidationError("score vector has " + std::to_string(v.scores.size()) +
                          " scores but " + std::to_string(v.labels.size()) + " labels");
  }
  double sum = 0.0;
  for (const double s : v.scores) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw ValidationError("score vector has a negative or non-finite score");
    }
    sum += s;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw ValidationError("score vector sums to " + std::to_string(sum) + ", not 1");
  }
}

std::vector<std::string> LabeledCorpus::LabelSet() const {
  std::set<std::string> labels;
  for (const auto& r : records) labels.insert(r.label);
  return {labels.begin(), labels.end()};
}

LabeledCorpus ParseCorpus(std::string_view jsonl, const std::string& source) {
  LabeledCorpus corpus;
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
    if (!j.is_object() || !j.contains("text") || !j["text"].is_string() ||
        !j.contains("label") || !j["label"].is_string()) {
      throw ParseError(source, line_no, "expected string fields \"text\" and \"label\"");
    }
    LabeledRecord r;
    r.text = j["text"].get<std::string>();
    r.label = j["label"].get<std::string>();
    if (j.contains("id")) {
      r.id = j["id"].is_string() ? j["id"].get<std::string>() : j["id"].dump();
    } else {
      r.id = std::to_string(corpus.records.size());
    }
    if (r.text.empty()) throw ParseError(source, line_no, "empty text");
    if (r.label.empty()) throw ParseError(source, line_no, "empty label");
    corpus.records.push_back(std::move(r));
  }
  return corpus;
}

LabeledCorpus LoadCorpus(const std::filesystem::path& path) {
  return ParseCorpus(ReadFile(path), path.string());
}

std::string SerializeCorpus(const LabeledCorpus& corpus) {
  std::string out;
  for (const auto& r : corpus.records) {
    Json j;
    j["id"] = r.id;
    j["text"] = r.text;
    j["label"] = r.label;
    out += j.dump() + "\n";
  }
  return out;
}

ScoreVector BlackBox::Predict(std::string_view text) const {
  const std::string copy(text);
  return PredictBatch(std::span<const std::string>(&copy, 1)).front();
}

TfidfVectorizer TfidfVectorizer::Fit(std::span<const std::string> texts) {
  std::map<std::string, std::size_t> df;
  for (const auto& text : texts) {
    auto words = SplitWords(text);
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    for (auto& w : words) ++df[w];
  }
  std::vector<std::string> vocabulary;
  std::vector<double> idf;
  const double n = static_cast<double>(texts.size());
  for (const auto& [word, count] : df) {
    vocabulary.push_back(word);
    idf.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(count))) + 1.0);
  }
  return FromParts(std::move(vocabulary), std::move(idf));
}

TfidfVectorizer TfidfVectorizer::FromParts(std::vector<std::string> vocabulary,
                                           std::vector<double> idf) {
  if (vocabulary.size() != idf.size()) {
    throw ValidationError("vocabulary and idf sizes differ");
  }
  TfidfVectorizer v;
  v.vocabulary_ = std::move(vocabulary);
  v.idf_ = std::move(idf);
  for (std::size_t i = 0; i < v.vocabulary_.size(); ++i) {
    if (!v.index_.emplace(v.vocabulary_[i], static_cast<std::uint32_t>(i)).second) {
      throw ValidationError("duplicate vocabulary entry '" + v.vocabulary_[i] + "'");
    }
  }
  return v;
}

SparseVector TfidfVectorizer::Transform(std::string_view text) const {
  std::map<std::uint32_t, double> counts;
  for (const auto& w : SplitWords(text)) {
    const auto it = index_.find(w);
    if (it != index_.end()) counts[it->second] += 1.0;
  }
  SparseVector out;
  double norm = 0.0;
  for (const auto& [index, count] : counts) {
    const double v = count * idf_[index];
    out.indices.push_back(index);
    out.values.push_back(v);
    norm += v * v;
  }
  if (norm > 0.0) {
    const double inv = 1.0 / std::sqrt(norm);
    for (double& v : out.values) v *= inv;
  }
  return out;
}

LogisticObjective::LogisticObjective(std::span<const SparseVector> rows,
                                     std::span<const int> targets, std::size_t dim,
                                     double l2)
    : rows_(rows), targets_(targets), dim_(dim), l2_(l2) {
  if (rows.size() != targets.size()) throw ValidationError("rows and targets differ in size");
}

double LogisticObjective::Loss(std::span<const double> params) const {
  const auto w = params.first(dim_);
  const double b = params[dim_];
  double loss = 0.0;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    loss += Softplus(-targets_[i] * (SparseDot(rows_[i], w) + b));
  }
  loss /= static_cast<double>(std::max<std::size_t>(rows_.size(), 1));
  return loss + 0.5 * l2_ * simd::Dot(w, w);
}

double LogisticObjective::LossAndGradient(std::span<const double> params,
                                          std::span<double> grad) const {
  std::vector<std::size_t> order(rows_.size());
  std::iota(order.begin(), order.end(), 0);
  return LossAndGradient(params, grad, 0, rows_.size(), order);
}

double LogisticObjective::LossAndGradient(std::span<const double> params,
                                          std::span<double> grad, std::size_t begin,
                                          std::size_t end,
                                          std::span<const std::size_t> order) const {
  const auto w = params.first(dim_);
  const double b = params[dim_];
  std::fill(grad.begin(), grad.end(), 0.0);
  const double scale = 1.0 / static_cast<double>(std::max<std::size_t>(end - begin, 1));
  double loss = 0.0;
  double grad_b = 0.0;
  for (std::size_t k = begin; k < end; ++k) {
    const std::size_t i = order[k];
    const SparseVector& x = rows_[i];
    const double y = targets_[i];
    const double margin = y * (SparseDot(x, w) + b);
    loss += Softplus(-margin);
    // d/dm softplus(-m) = -sigmoid(-m)
    const double coeff = -y * Sigmoid(-margin) * scale;
    for (std::size_t j = 0; j < x.indices.size(); ++j) {
      grad[x.indices[j]] += coeff * x.values[j];
    }
    grad_b += coeff;
  }
  simd::Axpy(l2_, w, grad.first(dim_));
  grad[dim_] = grad_b;
  return loss * scale + 0.5 * l2_ * simd::Dot(w, w);
}

std::shared_ptr<TfidfClassifier> TfidfClassifier::Train(const LabeledCorpus& corpus,
                                                        const TrainingConfig& config) {
  const auto labels = corpus.LabelSet();
  if (labels.size() < 2) {
    throw ValidationError("training corpus needs at least 2 classes, found " +
                          std::to_string(labels.size()));
  }
  std::map<std::string, std::size_t> per_class;
  for (const auto& r : corpus.records) ++per_class[r.label];
  for (const auto& [label, count] : per_class) {
    if (count < config.min_examples_per_class) {
      throw ValidationError("class '" + label + "' has " + std::to_string(count) +
                            " examples, need at least " +
                            std::to_string(config.min_examples_per_class));
    }
  }
  if (config.learning_rate <= 0 || config.epochs < 1 || config.l2 < 0) {
    throw ValidationError("invalid training hyperparameters");
  }

  std::vector<std::string> texts;
  texts.reserve(corpus.records.size());
  for (const auto& r : corpus.records) texts.push_back(r.text);
  auto vectorizer = TfidfVectorizer::Fit(texts);
  if (vectorizer.dim() == 0) throw ValidationError("training corpus has an empty vocabulary");

  std::vector<SparseVector> rows;
  rows.reserve(texts.size());
  for (const auto& t : texts) rows.push_back(vectorizer.Transform(t));

  const std::size_t dim = vectorizer.dim();
  const std::size_t n = rows.size();
  const std::size_t batch = config.batch_size == 0 ? n : std::min(config.batch_size, n);
  std::vector<std::vector<double>> weights;
  std::vector<double> biases;
  std::mt19937_64 rng(config.seed);
  for (const auto& label : labels) {
    std::vector<int> targets(n);
    for (std::size_t i = 0; i < n; ++i) {
      targets[i] = corpus.records[i].label == label ? 1 : -1;
    }
    LogisticObjective objective(rows, targets, dim, config.l2);
    std::vector<double> params(dim + 1, 0.0);
    std::vector<double> grad(dim + 1);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
      if (batch < n) std::shuffle(order.begin(), order.end(), rng);
      for (std::size_t start = 0; start < n; start += batch) {
        objective.LossAndGradient(params, grad, start, std::min(start + batch, n), order);
        simd::Axpy(-config.learning_rate, grad, params);
      }
    }
    biases.push_back(params[dim]);
    params.pop_back();
    weights.push_back(std::move(params));
  }
  return FromParts(labels, std::move(vectorizer), std::move(weights), std::move(biases),
                   config);
}

std::shared_ptr<TfidfClassifier> TfidfClassifier::FromParts(
    std::vector<std::string> labels, TfidfVectorizer vectorizer,
    std::vector<std::vector<double>> weights, std::vector<double> biases,
    TrainingConfig config) {
  if (labels.size() < 2) throw ValidationError("model needs at least 2 labels");
  if (weights.size() != labels.size() || biases.size() != labels.size()) {
    throw ValidationError("model has inconsistent class counts");
  }
  for (const auto& w : weights) {
    if (w.size() != vectorizer.dim()) {
      throw ValidationError("weight vector size does not match the vocabulary");
    }
  }
  std::shared_ptr<TfidfClassifier> model(new TfidfClassifier());
  model->labels_ = std::move(labels);
  model->vectorizer_ = std::move(vectorizer);
  model->weights_ = std::move(weights);
  model->biases_ = std::move(biases);
  model->config_ = config;
  model->ComputeFingerprint();
  return model;
}

void TfidfClassifier::ComputeFingerprint() {
  fingerprint_.clear();
  fingerprint_ = Fnv1aHex(SerializeModel(*this));
}

ScoreVector TfidfClassifier::PredictFeatures(const SparseVector& features) const {
  ScoreVector out;
  out.labels = labels_;
  out.scores.resize(labels_.size());
  double total = 0.0;
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    out.scores[k] = Sigmoid(SparseDot(features, weights_[k]) + biases_[k]);
    total += out.scores[k];
  }
  for (double& s : out.scores) s /= total;
  return out;
}

std::vector<ScoreVector> TfidfClassifier::PredictBatch(
    std::span<const std::string> texts) const {
  std::vector<ScoreVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(PredictFeatures(vectorizer_.Transform(t)));
  return out;
}

std::string SerializeModel(const TfidfClassifier& model) {
  Json j;
  j["format"] = kModelFormat;
  j["version"] = kModelVersion;
  j["labels"] = model.labels();
  j["training"] = {{"learning_rate", model.config().learning_rate},
                   {"l2", model.config().l2},
                   {"epochs", model.config().epochs},
                   {"batch_size", model.config().batch_size},
                   {"seed", model.config().seed}};
  j["vocabulary"] = model.vectorizer().vocabulary();
  j["idf"] = model.vectorizer().idf();
  j["weights"] = model.weights();
  j["biases"] = model.biases();
  return j.dump() + "\n";
}

std::shared_ptr<TfidfClassifier> ParseModel(std::string_view text,
                                            const std::string& source) {
  Json j;
  try {
    j = Json::parse(text);
    if (j.at("format") != kModelFormat) {
      throw ParseError(source, 0, "not an ontoexplain model file");
    }
    if (j.at("version") != kModelVersion) {
      throw ParseError(source, 0,
                       "unsupported model version " + j.at("version").dump());
    }
    TrainingConfig config;
    const auto& t = j.at("training");
    config.learning_rate = t.at("learning_rate").get<double>();
    config.l2 = t.at("l2").get<double>();
    config.epochs = t.at("epochs").get<int>();
    config.batch_size = t.at("batch_size").get<std::size_t>();
    config.seed = t.at("seed").get<std::uint64_t>();
    return TfidfClassifier::FromParts(
        j.at("labels").get<std::vector<std::string>>(),
        TfidfVectorizer::FromParts(j.at("vocabulary").get<std::vector<std::string>>(),
                                   j.at("idf").get<std::vector<double>>()),
        j.at("weights").get<std::vector<std::vector<double>>>(),
        j.at("biases").get<std::vector<double>>(), config);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source, 0, e.what());
  }
}

void SaveModel(const TfidfClassifier& model, const std::filesystem::path& path) {
  WriteFile(path, SerializeModel(model));
}

std::shared_ptr<TfidfClassifier> LoadModel(const std::filesystem::path& path) {
  return ParseModel(ReadFile(path), path.string());
}

std::string Fnv1aHex(std::string_view data) {
  std::uint64_t hash = 14695981039346656037ull;
  for (const unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace ontoexplain
