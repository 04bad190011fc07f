#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "urdet/corpus.hpp"
#include "urdet/detector.hpp"
#include "urdet/error.hpp"
#include "urdet/stats.hpp"
#include "urdet/stylometry.hpp"
#include "urdet/text_norm.hpp"

// JSON and JSONL schemas shared by the CLI and external tools.
namespace urdet::io {

using json = nlohmann::ordered_json;
using text::Label;

// ---------------------------------------------------------------------------
// Files

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for reading");
  return in;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
  return out;
}

/// Calls `fn(object, line_number)` for every nonblank line. Malformed JSON is
/// reported with its 1-based line number.
inline void read_jsonl(std::istream& in, const std::function<void(const json&, size_t)>& fn) {
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::MalformedInput, "line " + std::to_string(line_no) + ": invalid JSON (" + e.what() + ")");
    }
    if (!obj.is_object()) {
      throw Error(ErrorKind::MalformedInput, "line " + std::to_string(line_no) + ": expected a JSON object");
    }
    try {
      fn(obj, line_no);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::MalformedInput, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (in.bad()) throw Error(ErrorKind::Io, "read failure");
}

inline void read_jsonl(const std::filesystem::path& path, const std::function<void(const json&, size_t)>& fn) {
  auto in = open_input(path);
  read_jsonl(in, fn);
}

inline void write_json(const std::filesystem::path& path, const json& value) {
  auto out = open_output(path);
  out << value.dump(2) << '\n';
  if (!out) throw Error(ErrorKind::Io, "write failure on '" + path.string() + "'");
}

inline json read_json(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::MalformedInput, "'" + path.string() + "': " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Field helpers

namespace detail {

inline std::string where(size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

inline const json& require(const json& obj, const char* key, size_t line_no) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw Error(ErrorKind::MalformedInput, where(line_no) + "missing \"" + key + "\"");
  return *it;
}

inline std::string require_string(const json& obj, const char* key, size_t line_no) {
  const json& v = require(obj, key, line_no);
  if (!v.is_string()) throw Error(ErrorKind::MalformedInput, where(line_no) + "\"" + key + "\" must be a string");
  return v.get<std::string>();
}

inline std::string optional_string(const json& obj, const char* key, size_t line_no) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_string()) throw Error(ErrorKind::MalformedInput, where(line_no) + "\"" + key + "\" must be a string");
  return it->get<std::string>();
}

inline Label require_label(const json& obj, size_t line_no) {
  const auto s = require_string(obj, "label", line_no);
  const auto label = text::parse_label(s);
  if (!label) throw Error(ErrorKind::MalformedInput, where(line_no) + "label must be \"human\" or \"ai\", got \"" + s + "\"");
  return *label;
}

inline size_t require_count(const json& obj, const char* key, size_t line_no) {
  const json& v = require(obj, key, line_no);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw Error(ErrorKind::MalformedInput, where(line_no) + "\"" + key + "\" must be a nonnegative integer");
  }
  return v.get<size_t>();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// RawDocument JSONL

inline text::RawDocument parse_document(const json& obj, size_t line_no) {
  using namespace detail;
  text::RawDocument doc;
  doc.id = require_string(obj, "id", line_no);
  if (doc.id.empty()) throw Error(ErrorKind::MalformedInput, where(line_no) + "id must be nonempty");
  doc.text = require_string(obj, "text", line_no);
  if (doc.text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw Error(ErrorKind::MalformedInput, where(line_no) + "text is empty");
  }
  doc.label = require_label(obj, line_no);
  const std::string generator = optional_string(obj, "generator", line_no);
  if (!generator.empty()) {
    doc.generator = text::parse_generator(generator);
    if (!doc.generator) throw Error(ErrorKind::MalformedInput, where(line_no) + "unknown generator \"" + generator + "\"");
  }
  if (doc.label == Label::human && doc.generator) {
    throw Error(ErrorKind::MalformedInput, where(line_no) + "human document must not name a generator");
  }
  if (doc.label == Label::ai && !doc.generator) doc.generator = text::Generator::unknown;
  doc.source = optional_string(obj, "source", line_no);
  doc.domain = optional_string(obj, "domain", line_no);
  return doc;
}

inline json document_json(const text::RawDocument& doc) {
  json j;
  j["id"] = doc.id;
  j["text"] = doc.text;
  j["label"] = text::to_string(doc.label);
  j["generator"] = doc.generator ? json(text::to_string(*doc.generator)) : json(nullptr);
  j["source"] = doc.source;
  j["domain"] = doc.domain;
  return j;
}

inline json normalized_document_json(const text::RawDocument& doc, const text::NormalizedText& norm) {
  json j = document_json(doc);
  j["text"] = norm.text;
  j["original_length"] = norm.original_length;
  j["normalized_length"] = norm.normalized_length;
  return j;
}

/// Reads a corpus and rejects duplicate ids.
inline std::vector<text::RawDocument> read_documents(const std::filesystem::path& path) {
  std::vector<text::RawDocument> docs;
  std::unordered_set<std::string> ids;
  read_jsonl(path, [&](const json& obj, size_t line_no) {
    auto doc = parse_document(obj, line_no);
    if (!ids.insert(doc.id).second) {
      throw Error(ErrorKind::MalformedInput, detail::where(line_no) + "duplicate id \"" + doc.id + "\"");
    }
    docs.push_back(std::move(doc));
  });
  return docs;
}

// ---------------------------------------------------------------------------
// Chunks and splits

inline json chunk_json(const corpus::Chunk& c) {
  return json{{"chunk_id", c.chunk_id}, {"parent_id", c.parent_id}, {"index", c.index},
              {"text", c.text},         {"label", text::to_string(c.label)},
              {"char_start", c.char_start}, {"char_end", c.char_end}};
}

inline corpus::Chunk parse_chunk(const json& obj, size_t line_no) {
  using namespace detail;
  corpus::Chunk c;
  c.chunk_id = require_string(obj, "chunk_id", line_no);
  c.parent_id = require_string(obj, "parent_id", line_no);
  c.index = require_count(obj, "index", line_no);
  c.text = require_string(obj, "text", line_no);
  c.label = require_label(obj, line_no);
  c.char_start = require_count(obj, "char_start", line_no);
  c.char_end = require_count(obj, "char_end", line_no);
  if (c.char_end < c.char_start) throw Error(ErrorKind::MalformedInput, where(line_no) + "char_end < char_start");
  return c;
}

inline std::vector<corpus::Chunk> read_chunks(const std::filesystem::path& path) {
  std::vector<corpus::Chunk> chunks;
  std::unordered_set<std::string> ids;
  read_jsonl(path, [&](const json& obj, size_t line_no) {
    auto c = parse_chunk(obj, line_no);
    if (!ids.insert(c.chunk_id).second) {
      throw Error(ErrorKind::MalformedInput, detail::where(line_no) + "duplicate chunk_id \"" + c.chunk_id + "\"");
    }
    chunks.push_back(std::move(c));
  });
  return chunks;
}

inline void write_chunks(const std::filesystem::path& path, const std::vector<corpus::Chunk>& chunks) {
  auto out = open_output(path);
  for (const auto& c : chunks) out << chunk_json(c).dump() << '\n';
  if (!out) throw Error(ErrorKind::Io, "write failure on '" + path.string() + "'");
}

inline json summary_json(const corpus::ChunkingSummary& s) {
  return json{{"total_texts", s.total_texts},
              {"texts_chunked", s.texts_chunked},
              {"total_chunks", s.total_chunks},
              {"avg_chunks_per_text", s.avg_chunks_per_text},
              {"chunk_length_min", s.chunk_length_min},
              {"chunk_length_max", s.chunk_length_max},
              {"chunk_length_mean", s.chunk_length_mean},
              {"chunk_length_std", s.chunk_length_std},
              {"label_counts",
               {{"human", s.label_counts.count(Label::human) ? s.label_counts.at(Label::human) : 0},
                {"ai", s.label_counts.count(Label::ai) ? s.label_counts.at(Label::ai) : 0}}},
              {"tail_merged", s.tail_merged}};
}

inline json split_counts_json(const corpus::DatasetSplit& split) {
  json counts = json::object();
  const auto labels = split.label_counts();
  for (size_t i = 0; i < 3; ++i) {
    counts[std::string(corpus::kSplitNames[i])] = {
        {"total", labels[i].total()}, {"human", labels[i].human}, {"ai", labels[i].ai}};
  }
  return counts;
}

// ---------------------------------------------------------------------------
// Labeled texts for training and evaluation

struct LabeledRow {
  std::string id;
  std::string text;
  Label label = Label::human;
};

/// Accepts the chunk schema (id from "chunk_id") or the document schema ("id").
inline std::vector<LabeledRow> read_labeled_rows(const std::filesystem::path& path) {
  std::vector<LabeledRow> rows;
  std::unordered_set<std::string> ids;
  read_jsonl(path, [&](const json& obj, size_t line_no) {
    LabeledRow row;
    row.id = obj.contains("chunk_id") ? detail::require_string(obj, "chunk_id", line_no)
                                      : detail::require_string(obj, "id", line_no);
    row.text = detail::require_string(obj, "text", line_no);
    row.label = detail::require_label(obj, line_no);
    if (!ids.insert(row.id).second) {
      throw Error(ErrorKind::MalformedInput, detail::where(line_no) + "duplicate id \"" + row.id + "\"");
    }
    rows.push_back(std::move(row));
  });
  return rows;
}

// ---------------------------------------------------------------------------
// Stylometry

inline json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

inline json features_json(const stylometry::FeatureVector& f) {
  return json{{"char_count", f.char_count},
              {"word_count", f.word_count},
              {"sentence_count", f.sentence_count},
              {"avg_word_length", f.avg_word_length},
              {"avg_sentence_length", f.avg_sentence_length},
              {"sentence_length_std", f.sentence_length_std},
              {"punctuation_density", f.punctuation_density},
              {"char_diversity", f.char_diversity},
              {"ttr", f.ttr},
              {"bigram_uniqueness", optional_json(f.bigram_uniqueness)},
              {"trigram_uniqueness", optional_json(f.trigram_uniqueness)}};
}

inline json group_summary_json(const stylometry::GroupSummary& g) {
  return json{{"total_texts", g.total_texts},         {"total_words", g.total_words},
              {"total_chars", g.total_chars},         {"unique_words", g.unique_words},
              {"avg_text_length", g.avg_text_length}, {"avg_words_per_text", g.avg_words_per_text},
              {"vocabulary_richness", g.vocabulary_richness}};
}

inline json corpus_summary_json(const stylometry::CorpusSummary& s) {
  json groups = json::object();
  for (const auto& [label, g] : s.groups) groups[std::string(text::to_string(label))] = group_summary_json(g);
  json skipped = json::array();
  for (const auto& d : s.skipped) skipped.push_back({{"id", d.id}, {"reason", d.reason}});
  return json{{"groups", groups}, {"skipped", skipped}};
}

inline json ngram_table_json(const stylometry::NgramTable& t) {
  json entries = json::array();
  for (const auto& e : t.entries) entries.push_back({{"ngram", e.gram}, {"frequency", e.frequency}});
  return json{{"n", t.n}, {"total", t.total}, {"unique", t.unique}, {"entries", entries}};
}

// ---------------------------------------------------------------------------
// Stats

inline json test_result_json(const stats::TestResult& r) {
  json j{{"statistic", std::isfinite(r.statistic) ? json(r.statistic) : json(r.statistic > 0 ? "inf" : "-inf")},
         {"p_value", r.p_value},
         {"method", stats::to_string(r.method)},
         {"n1", r.n1},
         {"n2", r.n2}};
  if (r.df) j["df"] = *r.df;
  return j;
}

inline json comparison_json(const stats::ComparisonReport& report) {
  json metrics = json::array();
  for (const auto& m : report.metrics) {
    json j{{"metric", m.metric},
           {"human_n", m.human_n},
           {"ai_n", m.ai_n},
           {"human_mean", m.human_mean},
           {"ai_mean", m.ai_mean},
           {"human_std", m.human_std},
           {"ai_std", m.ai_std},
           {"t_test", m.t_result ? test_result_json(*m.t_result) : json{{"error", m.t_error.value_or("")}}},
           {"mann_whitney", m.u_result ? test_result_json(*m.u_result) : json{{"error", m.u_error.value_or("")}}},
           {"significant", m.significant}};
    metrics.push_back(std::move(j));
  }
  return json{{"alpha", report.alpha},
              {"significance_basis", report.basis == stats::SignificanceBasis::mann_whitney ? "mann_whitney" : "welch_t"},
              {"metrics", metrics}};
}

// ---------------------------------------------------------------------------
// Detector model, predictions and evaluation

inline constexpr const char* kModelFormat = "urdet-logistic-v1";

inline json model_json(const detector::DetectorModel& m) {
  return json{{"format", kModelFormat},
              {"feature_names", m.feature_names},
              {"weights", m.weights},
              {"bias", m.bias},
              {"threshold", m.threshold},
              {"scaler",
               {{"feature_names", m.scaler.feature_names},
                {"means", m.scaler.means},
                {"stds", m.scaler.stds},
                {"dropped", m.scaler.dropped}}},
              {"training", m.training}};
}

inline detector::DetectorModel parse_model(const json& j) {
  try {
    if (j.value("format", "") != kModelFormat) {
      throw Error(ErrorKind::MalformedInput, "model format must be \"" + std::string(kModelFormat) + "\"");
    }
    detector::DetectorModel m;
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    m.weights = j.at("weights").get<std::vector<double>>();
    m.bias = j.at("bias").get<double>();
    m.threshold = j.at("threshold").get<double>();
    const json& s = j.at("scaler");
    m.scaler.feature_names = s.at("feature_names").get<std::vector<std::string>>();
    m.scaler.means = s.at("means").get<std::vector<double>>();
    m.scaler.stds = s.at("stds").get<std::vector<double>>();
    m.scaler.dropped = s.value("dropped", std::vector<std::string>{});
    if (j.contains("training")) m.training = j.at("training").get<std::map<std::string, double>>();

    const size_t k = m.feature_names.size();
    if (m.weights.size() != k || m.scaler.feature_names != m.feature_names || m.scaler.means.size() != k ||
        m.scaler.stds.size() != k) {
      throw Error(ErrorKind::MalformedInput, "model arrays are inconsistent");
    }
    if (!(m.threshold > 0.0 && m.threshold < 1.0)) throw Error(ErrorKind::MalformedInput, "threshold must lie in (0, 1)");
    for (size_t i = 0; i < k; ++i) {
      if (!std::isfinite(m.weights[i]) || !std::isfinite(m.scaler.means[i]) || !(m.scaler.stds[i] > 0.0)) {
        throw Error(ErrorKind::MalformedInput, "model contains non-finite values or nonpositive stds");
      }
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedInput, std::string("model: ") + e.what());
  }
}

struct Prediction {
  std::string id;
  double prob_ai = 0.5;
  Label label_pred = Label::human;
};

inline json prediction_json(const Prediction& p) {
  return json{{"id", p.id}, {"prob_ai", p.prob_ai}, {"label_pred", text::to_string(p.label_pred)}};
}

inline Prediction parse_prediction(const json& obj, size_t line_no) {
  using namespace detail;
  Prediction p;
  p.id = require_string(obj, "id", line_no);
  const json& prob = require(obj, "prob_ai", line_no);
  if (!prob.is_number()) throw Error(ErrorKind::MalformedInput, where(line_no) + "\"prob_ai\" must be a number");
  p.prob_ai = prob.get<double>();
  if (!(p.prob_ai >= 0.0 && p.prob_ai <= 1.0)) {
    throw Error(ErrorKind::MalformedInput, where(line_no) + "\"prob_ai\" must lie in [0, 1]");
  }
  const auto label = text::parse_label(require_string(obj, "label_pred", line_no));
  if (!label) throw Error(ErrorKind::MalformedInput, where(line_no) + "\"label_pred\" must be \"human\" or \"ai\"");
  p.label_pred = *label;
  return p;
}

inline std::vector<Prediction> read_predictions(const std::filesystem::path& path) {
  std::vector<Prediction> preds;
  std::unordered_set<std::string> ids;
  read_jsonl(path, [&](const json& obj, size_t line_no) {
    auto p = parse_prediction(obj, line_no);
    if (!ids.insert(p.id).second) {
      throw Error(ErrorKind::MalformedInput, detail::where(line_no) + "duplicate id \"" + p.id + "\"");
    }
    preds.push_back(std::move(p));
  });
  return preds;
}

inline json class_metrics_json(const detector::ClassMetrics& m) {
  return json{{"precision", optional_json(m.precision)},
              {"recall", optional_json(m.recall)},
              {"f1", optional_json(m.f1)},
              {"support", m.support}};
}

inline json eval_report_json(const detector::EvalReport& r) {
  auto avg = [](const detector::AveragedMetrics& a) {
    return json{{"precision", a.precision}, {"recall", a.recall}, {"f1", a.f1}};
  };
  return json{{"n", r.n},
              {"positive_class", "ai"},
              {"confusion", {{"tp", r.confusion.tp}, {"fp", r.confusion.fp}, {"fn", r.confusion.fn}, {"tn", r.confusion.tn}}},
              {"accuracy", r.accuracy},
              {"f1", r.weighted.f1},
              {"precision", r.weighted.precision},
              {"per_class", {{"ai", class_metrics_json(r.ai)}, {"human", class_metrics_json(r.human)}}},
              {"macro", avg(r.macro)},
              {"weighted", avg(r.weighted)}};
}

}  // namespace urdet::io
