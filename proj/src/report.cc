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

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "ontoexplain/error.h"
#include "ontoexplain/eval.h"

namespace ontoexplain {
namespace {

using Json = nlohmann::ordered_json;

constexpr char kReportFormat[] = "ontoexplain.eval-report";
constexpr int kReportVersion = 1;

Json ConfigToJson(const EvalConfig& c) {
  const ExplainConfig& e = c.explain;
  Json variants = Json::array();
  for (const Variant v : c.variants) variants.push_back(VariantName(v));
  return {{"top_k", c.top_k},
          {"variants", variants},
          {"samples", e.samples},
          {"sigma", e.sigma},
          {"threshold", e.threshold},
          {"gamma", e.gamma},
          {"surrogate_top_k", e.top_k},
          {"ridge", e.ridge},
          {"seed", e.seed},
          {"lime_mode", e.lime_mode},
          {"use_ontology", e.use_ontology},
          {"use_anchors", e.use_anchors},
          {"use_triplexes", e.use_triplexes},
          {"builtin_triplexes", e.builtin_triplexes},
          {"min_confidence", e.min_confidence},
          {"seeds", e.seeds},
          {"stopwords", std::vector<std::string>(e.stopwords.begin(), e.stopwords.end())},
          {"verbs", std::vector<std::string>(e.verbs.begin(), e.verbs.end())}};
}

EvalConfig ConfigFromJson(const Json& j) {
  EvalConfig c;
  c.top_k = j.at("top_k").get<std::vector<std::size_t>>();
  c.variants.clear();
  for (const auto& v : j.at("variants")) c.variants.push_back(ParseVariant(v.get<std::string>()));
  ExplainConfig& e = c.explain;
  e.samples = j.at("samples").get<std::size_t>();
  e.sigma = j.at("sigma").get<double>();
  e.threshold = j.at("threshold").get<double>();
  e.gamma = j.at("gamma").get<int>();
  e.top_k = j.at("surrogate_top_k").get<std::size_t>();
  e.ridge = j.at("ridge").get<double>();
  e.seed = j.at("seed").get<std::uint64_t>();
  e.lime_mode = j.at("lime_mode").get<bool>();
  e.use_ontology = j.at("use_ontology").get<bool>();
  e.use_anchors = j.at("use_anchors").get<bool>();
  e.use_triplexes = j.at("use_triplexes").get<bool>();
  e.builtin_triplexes = j.at("builtin_triplexes").get<bool>();
  e.min_confidence = j.at("min_confidence").get<double>();
  e.seeds = j.at("seeds").get<std::vector<std::string>>();
  const auto stopwords = j.at("stopwords").get<std::vector<std::string>>();
  e.stopwords = WordSet(stopwords.begin(), stopwords.end());
  const auto verbs = j.at("verbs").get<std::vector<std::string>>();
  e.verbs = WordSet(verbs.begin(), verbs.end());
  return c;
}

Json ToJson(const EvalReport& r) {
  Json docs = Json::array();
  for (const auto& d : r.docs) {
    Json outcomes = Json::array();
    for (const auto& o : d.outcomes) {
      Json spans = Json::array();
      for (const auto& [b, e] : o.deleted_spans) spans.push_back({b, e});
      outcomes.push_back({{"variant", VariantName(o.variant)},
                          {"k", o.k},
                          {"explanations", o.explanations},
                          {"deleted_spans", spans},
                          {"deleted_words", o.deleted_words},
                          {"deleted_content_words", o.deleted_content_words},
                          {"deleted_text", o.deleted_text},
                          {"updated_label", o.updated_label},
                          {"updated_score", o.updated_score},
                          {"updated_correct", o.updated_correct},
                          {"score_change", o.score_change}});
    }
    docs.push_back({{"id", d.id},
                    {"text", d.text},
                    {"label", d.label},
                    {"original_label", d.original_label},
                    {"original_score", d.original_score},
                    {"original_correct", d.original_correct},
                    {"outcomes", outcomes},
                    {"warnings", d.warnings}});
  }
  Json summaries = Json::array();
  for (const auto& s : r.summaries) {
    summaries.push_back({{"variant", VariantName(s.variant)},
                         {"k", s.k},
                         {"original_accuracy", s.original_accuracy},
                         {"updated_accuracy", s.updated_accuracy},
                         {"ac", s.ac},
                         {"sc", s.sc},
                         {"ac_percent", s.ac * 100.0},
                         {"sc_percent", s.sc * 100.0}});
  }
  return {{"format", kReportFormat},
          {"version", kReportVersion},
          {"config", ConfigToJson(r.config)},
          {"model", {{"kind", r.model_kind}, {"fingerprint", r.model_fingerprint}}},
          {"ontology", r.ontology_name},
          {"summaries", summaries},
          {"docs", docs}};
}

std::string HtmlEscape(std::string_view s) {
  std::string out;
  for (const char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string Fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string RenderTable(const EvalReport& r) {
  std::ostringstream os;
  os << std::left << std::setw(16) << "variant" << std::right << std::setw(4) << "k"
     << std::setw(10) << "AC%" << std::setw(10) << "SC%" << std::setw(14) << "SC(raw)"
     << std::setw(10) << "acc" << std::setw(10) << "acc'" << '\n';
  for (const auto& s : r.summaries) {
    os << std::left << std::setw(16) << VariantName(s.variant) << std::right << std::setw(4)
       << s.k << std::setw(10) << Fixed(s.ac * 100.0, 2) << std::setw(10)
       << Fixed(s.sc * 100.0, 2) << std::setw(14) << Fixed(s.sc, 6) << std::setw(10)
       << Fixed(s.original_accuracy, 4) << std::setw(10) << Fixed(s.updated_accuracy, 4)
       << '\n';
  }
  return os.str();
}

std::string Highlight(const std::string& text,
                      const std::vector<std::pair<std::size_t, std::size_t>>& spans) {
  std::string out;
  std::size_t cursor = 0;
  for (const auto& [b, e] : spans) {
    out += HtmlEscape(std::string_view(text).substr(cursor, b - cursor));
    out += "<mark>" + HtmlEscape(std::string_view(text).substr(b, e - b)) + "</mark>";
    cursor = e;
  }
  out += HtmlEscape(std::string_view(text).substr(cursor));
  return out;
}

std::string RenderHtml(const EvalReport& r) {
  std::ostringstream os;
  os << "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\">"
     << "<title>ontoexplain evaluation</title>\n<style>"
     << "body{font-family:sans-serif;margin:2em}table{border-collapse:collapse}"
     << "td,th{border:1px solid #ccc;padding:4px 8px}mark{background:#ffe08a}"
     << ".doc{margin:1.5em 0}.variant{margin:0.3em 0 0.3em 1em}"
     << "</style></head><body>\n<h1>Evaluation</h1>\n";
  os << "<p>model " << HtmlEscape(r.model_kind) << " " << HtmlEscape(r.model_fingerprint)
     << ", ontology " << HtmlEscape(r.ontology_name) << "</p>\n";
  os << "<table><tr><th>variant</th><th>k</th><th>AC%</th><th>SC%</th></tr>\n";
  for (const auto& s : r.summaries) {
    os << "<tr><td>" << VariantName(s.variant) << "</td><td>" << s.k << "</td><td>"
       << Fixed(s.ac * 100.0, 2) << "</td><td>" << Fixed(s.sc * 100.0, 2) << "</td></tr>\n";
  }
  os << "</table>\n";
  for (const auto& d : r.docs) {
    os << "<div class=\"doc\"><h3>" << HtmlEscape(d.id) << " (label "
       << HtmlEscape(d.label) << ", predicted " << HtmlEscape(d.original_label)
       << ")</h3>\n";
    for (const auto& o : d.outcomes) {
      os << "<div class=\"variant\"><b>" << VariantName(o.variant) << " k=" << o.k
         << "</b>: " << Highlight(d.text, o.deleted_spans) << "<ul>";
      for (const auto& e : o.explanations) os << "<li>" << HtmlEscape(e) << "</li>";
      os << "</ul></div>\n";
    }
    os << "</div>\n";
  }
  os << "</body></html>\n";
  return os.str();
}

}  // namespace

ReportFormat ParseReportFormat(std::string_view name) {
  if (name == "structured" || name == "json") return ReportFormat::kStructured;
  if (name == "table") return ReportFormat::kTable;
  if (name == "html") return ReportFormat::kHtml;
  throw ValidationError("unknown report format '" + std::string(name) + "'");
}

std::string RenderReport(const EvalReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::kStructured:
      return ToJson(report).dump(2) + "\n";
    case ReportFormat::kTable:
      return RenderTable(report);
    case ReportFormat::kHtml:
      return RenderHtml(report);
  }
  return "";
}

EvalReport ParseReport(std::string_view text, const std::string& source) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source, 1, e.what());
  }
  try {
    if (j.at("format") != kReportFormat || j.at("version") != kReportVersion) {
      throw ParseError(source, 1, "not an evaluation report of a supported version");
    }
    EvalReport r;
    r.config = ConfigFromJson(j.at("config"));
    r.model_kind = j.at("model").at("kind").get<std::string>();
    r.model_fingerprint = j.at("model").at("fingerprint").get<std::string>();
    r.ontology_name = j.at("ontology").get<std::string>();
    for (const auto& s : j.at("summaries")) {
      VariantSummary v;
      v.variant = ParseVariant(s.at("variant").get<std::string>());
      v.k = s.at("k").get<std::size_t>();
      v.original_accuracy = s.at("original_accuracy").get<double>();
      v.updated_accuracy = s.at("updated_accuracy").get<double>();
      v.ac = s.at("ac").get<double>();
      v.sc = s.at("sc").get<double>();
      r.summaries.push_back(v);
    }
    for (const auto& d : j.at("docs")) {
      DocRecord rec;
      rec.id = d.at("id").get<std::string>();
      rec.text = d.at("text").get<std::string>();
      rec.label = d.at("label").get<std::string>();
      rec.original_label = d.at("original_label").get<std::string>();
      rec.original_score = d.at("original_score").get<double>();
      rec.original_correct = d.at("original_correct").get<bool>();
      rec.warnings = d.at("warnings").get<std::vector<std::string>>();
      for (const auto& o : d.at("outcomes")) {
        VariantOutcome out;
        out.variant = ParseVariant(o.at("variant").get<std::string>());
        out.k = o.at("k").get<std::size_t>();
        out.explanations = o.at("explanations").get<std::vector<std::string>>();
        for (const auto& span : o.at("deleted_spans")) {
          out.deleted_spans.emplace_back(span.at(0).get<std::size_t>(),
                                         span.at(1).get<std::size_t>());
        }
        out.deleted_words = o.at("deleted_words").get<std::size_t>();
        out.deleted_content_words = o.at("deleted_content_words").get<std::size_t>();
        out.deleted_text = o.at("deleted_text").get<std::string>();
        out.updated_label = o.at("updated_label").get<std::string>();
        out.updated_score = o.at("updated_score").get<double>();
        out.updated_correct = o.at("updated_correct").get<bool>();
        out.score_change = o.at("score_change").get<double>();
        rec.outcomes.push_back(std::move(out));
      }
      r.docs.push_back(std::move(rec));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source, 1, std::string("malformed report: ") + e.what());
  }
}

void EmitReport(const EvalReport& report, ReportFormat format,
                const std::filesystem::path& path) {
  WriteFile(path, RenderReport(report, format));
}

EvalReport LoadReport(const std::filesystem::path& path) {
  return ParseReport(ReadFile(path), path.string());
}

}  // namespace ontoexplain
