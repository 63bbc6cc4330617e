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

// Command-line front end: train, explain, tuples, eval, ontology tools and
// the synthetic corpus generator.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ontoexplain/blackbox.h"
#include "ontoexplain/error.h"
#include "ontoexplain/eval.h"
#include "ontoexplain/explainer.h"
#include "ontoexplain/ontology.h"
#include "ontoexplain/resources.h"
#include "ontoexplain/simd/kernels.h"
#include "ontoexplain/synth.h"
#include "ontoexplain/textproc.h"
#include "ontoexplain/triplex.h"
#include "ontoexplain/tuples.h"

namespace {

using namespace ontoexplain;
using Json = nlohmann::ordered_json;

struct ModelOptions {
  std::string model_path;
  std::string external;
  int timeout_ms = 30000;
};

void AddModelOptions(CLI::App* cmd, ModelOptions& m) {
  auto* model = cmd->add_option("--model", m.model_path, "Built-in model file");
  auto* external =
      cmd->add_option("--external", m.external, "Command speaking the adapter protocol");
  model->excludes(external);
  cmd->add_option("--timeout-ms", m.timeout_ms, "External model response timeout");
}

std::shared_ptr<BlackBox> OpenModel(const ModelOptions& m) {
  if (!m.external.empty()) {
    return ExternalModel::Start(m.external, std::chrono::milliseconds(m.timeout_ms));
  }
  if (m.model_path.empty()) throw ValidationError("either --model or --external is required");
  return LoadModel(m.model_path);
}

struct WordListOptions {
  std::string stopwords_file;
  std::string anchors_file;
  std::string verbs_file;
};

struct Document {
  std::string id;
  std::string text;
};

// A .jsonl file holds one {"id", "text"} object per line; anything else is a
// single plain-text document named after the file.
std::vector<Document> ReadDocuments(const std::string& text, const std::string& input) {
  if (!text.empty() || input.empty()) return {{"doc", text}};
  const std::filesystem::path path(input);
  const std::string contents = ReadFile(path);
  if (path.extension() != ".jsonl") return {{path.stem().string(), contents}};
  std::vector<Document> docs;
  std::istringstream in(contents);
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const Json j = Json::parse(line);
      Document d;
      d.id = j.contains("id") ? j.at("id").get<std::string>() : std::to_string(docs.size());
      d.text = j.at("text").get<std::string>();
      docs.push_back(std::move(d));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(input, lineno, e.what());
    }
  }
  return docs;
}

void Emit(const std::string& out_path, const std::string& contents) {
  if (out_path.empty() || out_path == "-") {
    std::cout << contents;
  } else {
    WriteFile(out_path, contents);
  }
}

std::vector<std::size_t> ParseSizeList(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v < 1) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw ValidationError("invalid top-k list '" + s + "'");
    }
  }
  if (out.empty()) throw ValidationError("empty top-k list");
  return out;
}

void ApplyWordLists(const WordListOptions& w, ExplainConfig& config) {
  if (!w.stopwords_file.empty()) config.stopwords = LoadWordList(w.stopwords_file);
  if (!w.verbs_file.empty()) config.verbs = LoadWordList(w.verbs_file);
  if (!w.anchors_file.empty()) config.seeds = ParsePhraseList(ReadFile(w.anchors_file));
}

void AddExplainOptions(CLI::App* cmd, ExplainConfig& c, WordListOptions& w,
                       bool& no_anchors, bool& no_triplexes, const std::string& top_k_flag) {
  cmd->add_option("--samples", c.samples, "Perturbation samples")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--sigma", c.sigma, "Kernel width")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--threshold", c.threshold, "Unit inclusion threshold")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--gamma", c.gamma, "Contextual constraint")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option(top_k_flag, c.top_k, "Units kept by the surrogate refit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--ridge", c.ridge, "Ridge penalty")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_flag("--lime-mode", c.lime_mode, "Sample words independently");
  cmd->add_flag("--no-anchors", no_anchors, "Skip anchor learning");
  cmd->add_flag("--no-triplexes", no_triplexes, "Ignore triplexes");
  cmd->add_flag("--builtin-triplexes", c.builtin_triplexes,
                "Add triplexes from the heuristic extractor");
  cmd->add_option("--min-confidence", c.min_confidence, "Triplex confidence threshold")
      ->capture_default_str();
  cmd->add_option("--anchors-file", w.anchors_file, "Anchor seed phrases, one per line");
  cmd->add_option("--stopwords", w.stopwords_file, "Stopword list file");
  cmd->add_option("--verbs", w.verbs_file, "Verb lexicon for the heuristic extractor");
}

std::string RenderText(const ExplainResult& r) {
  std::ostringstream os;
  os << r.doc_id << ": " << r.explanations.size() << " explanation(s)\n";
  for (const auto& e : r.explanations) {
    os << "  #" << e.rank << " [sentence " << e.sentence << ", IC " << e.score << "] "
       << e.text << '\n';
  }
  for (const auto& oe : r.ontology_explanations) {
    os << "  ontology (sentence " << oe.sentence << "): " << oe.Render(r.doc) << '\n';
  }
  for (const auto& w : r.warnings) os << "  warning: " << w << '\n';
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ontology-guided explanations for black-box text classifiers"};
  app.name("ontoexplain");
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  std::string simd_level = "auto";
  const char* env_config = std::getenv("ONTOEXPLAIN_CONFIG");
  app.set_config("--config", env_config ? env_config : "",
                 "TOML/INI file with option values (default from ONTOEXPLAIN_CONFIG)");
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--simd", simd_level, "Kernel level: auto, scalar, avx2, neon")
      ->capture_default_str();

  // train
  auto* train = app.add_subcommand("train", "Train the built-in TF-IDF classifier");
  std::string train_corpus, train_out;
  TrainingConfig train_config;
  train->add_option("--corpus", train_corpus, "Labeled JSONL corpus")->required();
  train->add_option("--out", train_out, "Model file to write")->required();
  train->add_option("--epochs", train_config.epochs, "Passes over the corpus")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train->add_option("--lr", train_config.learning_rate, "Learning rate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train->add_option("--l2", train_config.l2, "L2 penalty on the weights")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  train->add_option("--batch-size", train_config.batch_size, "0 for full batch")
      ->capture_default_str();
  train->add_option("--min-per-class", train_config.min_examples_per_class,
                    "Fewest records a class may have")
      ->capture_default_str();

  // explain
  auto* explain = app.add_subcommand("explain", "Explain predictions for documents");
  ExplainConfig explain_config = ExplainConfig::Default();
  WordListOptions explain_lists;
  ModelOptions explain_model;
  std::string explain_onto, explain_text, explain_input, explain_triplexes, explain_out;
  std::string explain_format = "jsonl";
  bool explain_no_anchors = false, explain_no_triplexes = false;
  AddModelOptions(explain, explain_model);
  AddExplainOptions(explain, explain_config, explain_lists, explain_no_anchors,
                    explain_no_triplexes, "--top-k");
  explain->add_option("--ontology", explain_onto, "Ontology file")->required();
  explain->add_option("--text", explain_text, "Document text");
  explain->add_option("--input", explain_input, "Plain-text file or JSONL documents");
  explain->add_option("--triplexes", explain_triplexes, "Triplex JSONL file");
  explain->add_option("--out", explain_out, "Output file (default stdout)");
  explain->add_option("--format", explain_format, "jsonl or text")
      ->check(CLI::IsMember({"jsonl", "text"}))
      ->capture_default_str();

  // tuples
  auto* tuples = app.add_subcommand("tuples", "List ontology tuples of documents");
  std::string tuples_onto, tuples_text, tuples_input, tuples_stopwords;
  int tuples_gamma = 3;
  tuples->add_option("--ontology", tuples_onto, "Ontology file")->required();
  tuples->add_option("--text", tuples_text, "Document text");
  tuples->add_option("--input", tuples_input, "Plain-text file or JSONL documents");
  tuples->add_option("--gamma", tuples_gamma, "Contextual constraint")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  tuples->add_option("--stopwords", tuples_stopwords, "Stopword list file");

  // eval
  auto* eval = app.add_subcommand("eval", "Word-deletion evaluation of explainer variants");
  EvalConfig eval_config;
  WordListOptions eval_lists;
  ModelOptions eval_model;
  std::string eval_corpus, eval_onto, eval_triplexes, eval_out, eval_top_k = "1";
  std::string eval_format = "structured";
  std::vector<std::string> eval_variants;
  bool eval_no_anchors = false, eval_no_triplexes = false;
  AddModelOptions(eval, eval_model);
  AddExplainOptions(eval, eval_config.explain, eval_lists, eval_no_anchors, eval_no_triplexes,
                    "--surrogate-top-k");
  eval->add_option("--corpus", eval_corpus, "Labeled JSONL test corpus")->required();
  eval->add_option("--ontology", eval_onto, "Ontology file")->required();
  eval->add_option("--triplexes", eval_triplexes, "Triplex JSONL file");
  eval->add_option("--top-k", eval_top_k, "Deleted explanations, e.g. 1 or 1,2,3")
      ->capture_default_str();
  eval->add_option("--variants", eval_variants,
                   "Subset of onml, lime_mode, ontology_only, triplex_only")
      ->delimiter(',');
  eval->add_option("--format", eval_format, "structured, table or html")
      ->check(CLI::IsMember({"structured", "json", "table", "html"}))
      ->capture_default_str();
  eval->add_option("--out", eval_out, "Output file (default stdout)");

  // ontology validate
  auto* ontology = app.add_subcommand("ontology", "Ontology utilities");
  ontology->require_subcommand(1);
  auto* validate = ontology->add_subcommand("validate", "Check an ontology file");
  std::string validate_path;
  validate->add_option("file", validate_path, "Ontology file")->required();

  // convert-ontology
  auto* convert = app.add_subcommand("convert-ontology", "Build an ontology from CSV exports");
  std::string convert_concepts, convert_relations, convert_name, convert_out;
  convert->add_option("--concepts", convert_concepts, "CSV of id,label,term")->required();
  convert->add_option("--relations", convert_relations, "CSV of source,label,target")
      ->required();
  convert->add_option("--name", convert_name, "Ontology name")->required();
  convert->add_option("--out", convert_out, "Output file (default stdout)");

  // synth-corpus
  auto* synth = app.add_subcommand("synth-corpus", "Generate a planted-pair corpus");
  SynthConfig synth_config;
  std::string synth_out, synth_onto_out;
  synth->add_option("--docs", synth_config.docs)->capture_default_str();
  synth->add_option("--positive-fraction", synth_config.positive_fraction)
      ->capture_default_str();
  synth->add_option("--negative-keyword-rate", synth_config.negative_keyword_rate)
      ->capture_default_str();
  synth->add_option("--max-gap", synth_config.max_gap)->capture_default_str();
  synth->add_option("--vocabulary-seed", synth_config.vocabulary_seed)->capture_default_str();
  synth->add_option("--out", synth_out, "Corpus JSONL file")->required();
  synth->add_option("--ontology-out", synth_onto_out, "Ontology file to write");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const auto level = simd::ParseLevel(simd_level);
    if (!level) throw ValidationError("unknown --simd level '" + simd_level + "'");
    simd::SetLevel(*level);

    if (train->parsed()) {
      train_config.seed = seed;
      const auto model = TfidfClassifier::Train(LoadCorpus(train_corpus), train_config);
      SaveModel(*model, train_out);
      std::cerr << "trained " << model->labels().size() << "-class model, vocabulary "
                << model->vectorizer().dim() << ", fingerprint " << model->fingerprint()
                << '\n';
    } else if (explain->parsed()) {
      explain_config.seed = seed;
      explain_config.use_anchors = !explain_no_anchors;
      explain_config.use_triplexes = !explain_no_triplexes;
      ApplyWordLists(explain_lists, explain_config);
      const auto model = OpenModel(explain_model);
      const Ontology onto = LoadOntology(explain_onto);
      TriplexIndex index;
      if (!explain_triplexes.empty()) {
        index = LoadTriplexes(explain_triplexes, explain_config.min_confidence);
      }
      std::string out;
      for (const auto& d : ReadDocuments(explain_text, explain_input)) {
        const auto found = index.find(d.id);
        const std::vector<Triplex> none;
        const auto& doc_triplexes = found == index.end() ? none : found->second;
        const auto result =
            Explain(d.id, d.text, *model, onto, doc_triplexes, explain_config);
        for (const auto& w : result.warnings) std::cerr << d.id << ": " << w << '\n';
        out += explain_format == "text" ? RenderText(result) : SerializeExplanations(result);
      }
      Emit(explain_out, out);
    } else if (tuples->parsed()) {
      const WordSet stopwords =
          tuples_stopwords.empty() ? DefaultStopwords() : LoadWordList(tuples_stopwords);
      const Ontology onto = LoadOntology(tuples_onto);
      std::string out;
      for (const auto& d : ReadDocuments(tuples_text, tuples_input)) {
        const TokenizedDoc doc = Tokenize(d.text, stopwords);
        for (const auto& t : ExtractTuples(doc, onto, tuples_gamma)) {
          Json j = {{"doc_id", d.id},
                    {"sentence_idx", t.sentence(doc)},
                    {"first", t.first.phrase},
                    {"second", t.second.phrase},
                    {"source", t.source_concept},
                    {"target", t.target_concept},
                    {"distance", t.distance}};
          out += j.dump() + "\n";
        }
      }
      Emit("", out);
    } else if (eval->parsed()) {
      eval_config.explain.seed = seed;
      eval_config.explain.use_anchors = !eval_no_anchors;
      eval_config.explain.use_triplexes = !eval_no_triplexes;
      ApplyWordLists(eval_lists, eval_config.explain);
      eval_config.top_k = ParseSizeList(eval_top_k);
      if (!eval_variants.empty()) {
        eval_config.variants.clear();
        for (const auto& v : eval_variants) eval_config.variants.push_back(ParseVariant(v));
      }
      const auto model = OpenModel(eval_model);
      const Ontology onto = LoadOntology(eval_onto);
      TriplexIndex index;
      if (!eval_triplexes.empty()) {
        index = LoadTriplexes(eval_triplexes, eval_config.explain.min_confidence);
      }
      const auto report = RunEval(LoadCorpus(eval_corpus), *model, onto, index, eval_config);
      Emit(eval_out, RenderReport(report, ParseReportFormat(eval_format)));
    } else if (validate->parsed()) {
      const Ontology onto = LoadOntology(validate_path);
      std::cout << onto.name() << ": " << onto.concepts().size() << " concepts, "
                << onto.term_count() << " terms, " << onto.relations().size()
                << " relations\n";
    } else if (convert->parsed()) {
      const Ontology onto = ConvertCsvOntology(ReadFile(convert_concepts),
                                               ReadFile(convert_relations), convert_name);
      Emit(convert_out, SerializeOntology(onto));
    } else if (synth->parsed()) {
      synth_config.seed = seed;
      WriteFile(synth_out, SerializeCorpus(MakeSynthCorpus(synth_config)));
      if (!synth_onto_out.empty()) {
        SaveOntology(MakeSynthOntology(synth_config), synth_onto_out);
      }
    }
  } catch (const Error& e) {
    std::cerr << "ontoexplain: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "ontoexplain: internal error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
