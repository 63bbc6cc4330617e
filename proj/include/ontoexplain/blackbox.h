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

#ifndef ONTOEXPLAIN_BLACKBOX_H_
#define ONTOEXPLAIN_BLACKBOX_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ontoexplain {

// Normalized class scores. Invariant: scores.size() == labels.size() >= 2,
// every score >= 0, sum within 1e-6 of 1.
struct ScoreVector {
  std::vector<double> scores;
  std::vector<std::string> labels;

  std::size_t size() const { return scores.size(); }
  double operator[](std::size_t k) const { return scores[k]; }
  // Index of the highest score; lowest index wins ties.
  std::size_t argmax() const;

  friend bool operator==(const ScoreVector&, const ScoreVector&) = default;
};

// Throws ValidationError when `v` breaks the ScoreVector invariant.
void CheckScoreVector(const ScoreVector& v);

struct LabeledRecord {
  std::string id;
  std::string text;
  std::string label;
};

struct LabeledCorpus {
  std::vector<LabeledRecord> records;

  // Sorted distinct labels.
  std::vector<std::string> LabelSet() const;
};

// JSON lines: {"id": <string, optional>, "text": <string>, "label": <string>}.
// Missing ids become the 0-based line ordinal. Empty texts are rejected.
LabeledCorpus ParseCorpus(std::string_view jsonl, const std::string& source = "<corpus>");
LabeledCorpus LoadCorpus(const std::filesystem::path& path);
std::string SerializeCorpus(const LabeledCorpus& corpus);

// The model being explained: text -> class scores. Implementations must be
// deterministic and safe to call from several threads.
class BlackBox {
 public:
  virtual ~BlackBox() = default;

  virtual const std::vector<std::string>& labels() const = 0;
  virtual std::string kind() const = 0;
  virtual std::string fingerprint() const = 0;
  // Largest number of requests the model accepts concurrently.
  virtual std::size_t max_in_flight() const { return 1; }

  virtual ScoreVector Predict(std::string_view text) const;
  // Element i equals Predict(texts[i]).
  virtual std::vector<ScoreVector> PredictBatch(
      std::span<const std::string> texts) const = 0;
};

struct SparseVector {
  std::vector<std::uint32_t> indices;
  std::vector<double> values;
};

// Smoothed TF-IDF over all word norms: idf = ln((1 + N) / (1 + df)) + 1,
// rows L2-normalized.
class TfidfVectorizer {
 public:
  TfidfVectorizer() = default;
  static TfidfVectorizer Fit(std::span<const std::string> texts);
  static TfidfVectorizer FromParts(std::vector<std::string> vocabulary,
                                   std::vector<double> idf);

  SparseVector Transform(std::string_view text) const;

  const std::vector<std::string>& vocabulary() const { return vocabulary_; }
  const std::vector<double>& idf() const { return idf_; }
  std::size_t dim() const { return vocabulary_.size(); }

 private:
  std::vector<std::string> vocabulary_;
  std::vector<double> idf_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// Mean logistic loss of one one-vs-rest problem with an L2 penalty on the
// weights (not the bias):
//   L(w, b) = 1/N sum_i log(1 + exp(-y_i (w . x_i + b))) + l2/2 |w|^2
// with y_i in {-1, +1}. Parameters are packed as [w..., b].
class LogisticObjective {
 public:
  LogisticObjective(std::span<const SparseVector> rows, std::span<const int> targets,
                    std::size_t dim, double l2);

  std::size_t num_params() const { return dim_ + 1; }
  double Loss(std::span<const double> params) const;
  // Returns the loss and writes its gradient into `grad`.
  double LossAndGradient(std::span<const double> params, std::span<double> grad) const;
  // Same, restricted to rows [begin, end) (mini-batch).
  double LossAndGradient(std::span<const double> params, std::span<double> grad,
                         std::size_t begin, std::size_t end,
                         std::span<const std::size_t> order) const;

 private:
  std::span<const SparseVector> rows_;
  std::span<const int> targets_;
  std::size_t dim_;
  double l2_;
};

struct TrainingConfig {
  double learning_rate = 1.0;
  double l2 = 1e-4;
  int epochs = 2000;
  // 0 means full-batch gradient descent.
  std::size_t batch_size = 0;
  std::uint64_t seed = 0;
  std::size_t min_examples_per_class = 10;
};

// TF-IDF features and one-vs-rest logistic scorers. Class scores are the
// per-class sigmoids normalized to sum to one.
class TfidfClassifier final : public BlackBox {
 public:
  // Throws ValidationError for fewer than two classes, a class with fewer
  // than `min_examples_per_class` records, or an empty vocabulary.
  static std::shared_ptr<TfidfClassifier> Train(const LabeledCorpus& corpus,
                                                const TrainingConfig& config);
  static std::shared_ptr<TfidfClassifier> FromParts(
      std::vector<std::string> labels, TfidfVectorizer vectorizer,
      std::vector<std::vector<double>> weights, std::vector<double> biases,
      TrainingConfig config);

  const std::vector<std::string>& labels() const override { return labels_; }
  std::string kind() const override { return "builtin"; }
  std::string fingerprint() const override { return fingerprint_; }

  std::vector<ScoreVector> PredictBatch(std::span<const std::string> texts) const override;
  ScoreVector PredictFeatures(const SparseVector& features) const;

  const TfidfVectorizer& vectorizer() const { return vectorizer_; }
  const std::vector<std::vector<double>>& weights() const { return weights_; }
  const std::vector<double>& biases() const { return biases_; }
  const TrainingConfig& config() const { return config_; }

 private:
  TfidfClassifier() = default;
  void ComputeFingerprint();

  std::vector<std::string> labels_;
  TfidfVectorizer vectorizer_;
  std::vector<std::vector<double>> weights_;
  std::vector<double> biases_;
  TrainingConfig config_;
  std::string fingerprint_;
};

// Versioned JSON model file (format "ontoexplain.tfidf-ovr", version 1).
std::string SerializeModel(const TfidfClassifier& model);
std::shared_ptr<TfidfClassifier> ParseModel(std::string_view text,
                                            const std::string& source = "<model>");
void SaveModel(const TfidfClassifier& model, const std::filesystem::path& path);
std::shared_ptr<TfidfClassifier> LoadModel(const std::filesystem::path& path);

// A model served by a child process over its standard streams.
//
// The child first writes a handshake line
//   {"labels": [...], "max_in_flight": <int>}
// then answers each request line {"id": <int>, "text": <string>} with
//   {"id": <int>, "scores": [...], "labels": [...]}
// Responses may arrive out of order; at most max_in_flight requests are
// outstanding. Requests are serialized through one connection.
class ExternalModel final : public BlackBox {
 public:
  // Runs `command` through /bin/sh. Throws ProtocolError when the child
  // cannot be started or the handshake is invalid or late.
  static std::shared_ptr<ExternalModel> Start(
      const std::string& command,
      std::chrono::milliseconds timeout = std::chrono::seconds(30));
  ~ExternalModel() override;

  ExternalModel(const ExternalModel&) = delete;
  ExternalModel& operator=(const ExternalModel&) = delete;

  const std::vector<std::string>& labels() const override { return labels_; }
  std::string kind() const override { return "external"; }
  std::string fingerprint() const override { return fingerprint_; }
  std::size_t max_in_flight() const override { return max_in_flight_; }

  // Throws ProtocolError on timeout, malformed responses, mismatched labels
  // or scores that are not normalized; the message names the failing index.
  std::vector<ScoreVector> PredictBatch(std::span<const std::string> texts) const override;

 private:
  ExternalModel() = default;
  std::string ReadLine() const;
  void WriteLine(const std::string& line) const;

  std::string command_;
  std::vector<std::string> labels_;
  std::string fingerprint_;
  std::size_t max_in_flight_ = 1;
  std::chrono::milliseconds timeout_{30000};
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  mutable std::mutex mutex_;
  mutable std::string read_buffer_;
  mutable std::int64_t next_id_ = 0;
};

// 64-bit FNV-1a, hex encoded. Stable across platforms.
std::string Fnv1aHex(std::string_view data);

}  // namespace ontoexplain

#endif  // ONTOEXPLAIN_BLACKBOX_H_
