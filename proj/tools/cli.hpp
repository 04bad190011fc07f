#pragma once

// Command-line front end. Each subcommand is one file-based pipeline stage
// and writes a run manifest beside its output.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>

#include "urdet/urdet.hpp"

#ifndef URDET_VERSION
#define URDET_VERSION "dev"
#endif

namespace urdet::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kInvalidInput = 1, kIoFailure = 2 };

inline int exit_code_for(ErrorKind kind) { return kind == ErrorKind::Io ? kIoFailure : kInvalidInput; }

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

/// Run manifest written next to a stage's main output.
struct Manifest {
  std::string command;
  std::vector<std::string> argv;
  json flags = json::object();
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::optional<uint64_t> seed;

  json to_json() const {
    json j{{"command", command}, {"argv", argv},       {"flags", flags},
           {"inputs", inputs},   {"outputs", outputs}, {"tool_version", URDET_VERSION},
           {"timestamp", utc_timestamp()}};
    j["seed"] = seed ? json(*seed) : json(nullptr);
    return j;
  }
};

inline fs::path manifest_path_for(const fs::path& output) {
  return fs::path(output.string() + ".manifest.json");
}

inline void write_manifest(const fs::path& path, const Manifest& m, const json& extra = json::object()) {
  json j = m.to_json();
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  io::write_json(path, j);
}

/// Preprocesses then measures a text. Throws NoWords when nothing countable remains.
inline stylometry::FeatureVector text_features(const std::string& raw) {
  return stylometry::extract_features(std::u32string_view(text::preprocess_text(unicode::to_u32(raw))));
}

struct LabeledFeatures {
  detector::Dataset data;
  std::vector<std::string> skipped;
};

inline LabeledFeatures featurize(const std::vector<io::LabeledRow>& rows, bool skip_wordless) {
  LabeledFeatures out;
  out.data.feature_names = detector::default_feature_names();
  for (const auto& row : rows) {
    try {
      out.data.add(row.id, detector::feature_row(text_features(row.text)), row.label);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoWords || !skip_wordless) {
        throw Error(e.kind(), "row '" + row.id + "': " + e.what());
      }
      out.skipped.push_back(row.id);
    }
  }
  return out;
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(int argc, const char* const* argv) {
    for (int i = 0; i < argc; ++i) argv_.emplace_back(argv[i]);

    CLI::App app{"Urdu human/AI text forensics toolkit", "urdet"};
    app.set_version_flag("--version", URDET_VERSION);
    app.require_subcommand(1);

    setup_preprocess(app);
    setup_chunk(app);
    setup_analyze(app);
    setup_split(app);
    setup_train(app);
    setup_evaluate(app);
    setup_detect(app);

    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
      out_ << app.help();
      return kOk;
    } catch (const CLI::CallForAllHelp&) {
      out_ << app.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::CallForVersion&) {
      out_ << URDET_VERSION << '\n';
      return kOk;
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << '\n';
      const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
      err_ << sub->help();
      return kInvalidInput;
    }

    try {
      return action_();
    } catch (const Error& e) {
      err_ << "error: " << e.what() << '\n';
      return exit_code_for(e.kind());
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << '\n';
      return kIoFailure;
    }
  }

 private:
  Manifest manifest(const std::string& command) const {
    Manifest m;
    m.command = command;
    m.argv = argv_;
    return m;
  }

  // -------------------------------------------------------------------------
  void setup_preprocess(CLI::App& app) {
    auto* cmd = app.add_subcommand("preprocess", "Normalize a RawDocument JSONL corpus");
    cmd->add_option("--in", pre_.in, "Input corpus (JSONL)")->required();
    cmd->add_option("--out", pre_.out, "Normalized corpus (JSONL)")->required();
    cmd->callback([this] { action_ = [this] { return do_preprocess(); }; });
  }

  int do_preprocess() {
    const auto docs = io::read_documents(pre_.in);
    auto out = io::open_output(pre_.out);
    size_t kept = 0;
    std::vector<std::string> dropped;
    for (const auto& doc : docs) {
      try {
        const auto norm = text::preprocess(doc);
        out << io::normalized_document_json(doc, norm).dump() << '\n';
        ++kept;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::EmptyAfterPreprocess) throw;
        err_ << "dropped " << doc.id << ": empty after preprocessing\n";
        dropped.push_back(doc.id);
      }
    }
    out.close();
    if (!out) throw Error(ErrorKind::Io, "write failure on '" + pre_.out + "'");

    auto m = manifest("preprocess");
    m.flags = {{"in", pre_.in}, {"out", pre_.out}};
    m.inputs = {pre_.in};
    m.outputs = {pre_.out};
    write_manifest(manifest_path_for(pre_.out), m,
                   {{"documents_in", docs.size()}, {"documents_out", kept}, {"dropped", dropped}});
    err_ << kept << " documents written, " << dropped.size() << " dropped\n";
    return kOk;
  }

  // -------------------------------------------------------------------------
  void setup_chunk(CLI::App& app) {
    auto* cmd = app.add_subcommand("chunk", "Sliding-window chunking of a normalized corpus");
    cmd->add_option("--in", chunk_.in, "Normalized corpus (JSONL)")->required();
    cmd->add_option("--out", chunk_.out, "Chunks (JSONL)")->required();
    cmd->add_option("--window", chunk_.config.window, "Window length in characters")->capture_default_str();
    cmd->add_option("--overlap", chunk_.config.overlap, "Overlap in characters")->capture_default_str();
    cmd->add_option("--min-chunk", chunk_.config.min_chunk, "Minimum final chunk length")->capture_default_str();
    cmd->add_option("--summary", chunk_.summary, "Chunking summary (JSON)")->required();
    cmd->callback([this] { action_ = [this] { return do_chunk(); }; });
  }

  int do_chunk() {
    chunk_.config.validate();
    std::vector<corpus::Document> docs;
    for (auto& d : io::read_documents(chunk_.in)) docs.push_back({d.id, std::move(d.text), d.label});
    const auto result = corpus::chunk_corpus(docs, chunk_.config);
    io::write_chunks(chunk_.out, result.chunks);
    io::write_json(chunk_.summary, io::summary_json(result.summary));

    auto m = manifest("chunk");
    m.flags = {{"in", chunk_.in},
               {"out", chunk_.out},
               {"summary", chunk_.summary},
               {"window", chunk_.config.window},
               {"overlap", chunk_.config.overlap},
               {"min_chunk", chunk_.config.min_chunk}};
    m.inputs = {chunk_.in};
    m.outputs = {chunk_.out, chunk_.summary};
    write_manifest(manifest_path_for(chunk_.out), m);
    err_ << result.summary.total_texts << " texts -> " << result.summary.total_chunks << " chunks\n";
    return kOk;
  }

  // -------------------------------------------------------------------------
  void setup_analyze(CLI::App& app) {
    auto* cmd = app.add_subcommand("analyze", "Corpus statistics and human-vs-AI hypothesis tests");
    cmd->add_option("--in", analyze_.in, "Normalized corpus (JSONL)")->required();
    cmd->add_option("--out", analyze_.out, "Report (JSON)")->required();
    cmd->add_option("--alpha", analyze_.alpha, "Significance level")->capture_default_str();
    cmd->add_option("--top-k", analyze_.top_k, "N-gram entries per table")->capture_default_str();
    cmd->add_option("--features-out", analyze_.features_out, "Per-document feature dump (JSONL)");
    cmd->add_option("--significance", analyze_.basis, "Test deciding significance: mann_whitney or welch_t")
        ->capture_default_str()
        ->check(CLI::IsMember({"mann_whitney", "welch_t"}));
    cmd->callback([this] { action_ = [this] { return do_analyze(); }; });
  }

  int do_analyze() {
    if (!(analyze_.alpha > 0.0 && analyze_.alpha < 1.0)) {
      throw Error(ErrorKind::InvalidConfig, "--alpha must lie in (0, 1)");
    }
    const auto docs = io::read_documents(analyze_.in);

    std::vector<stylometry::LabeledText> texts;
    std::vector<stylometry::FeatureVector> human, ai;
    std::map<text::Label, stylometry::NgramCounter> bigrams{{text::Label::human, stylometry::NgramCounter(2)},
                                                          {text::Label::ai, stylometry::NgramCounter(2)}};
    std::map<text::Label, stylometry::NgramCounter> trigrams{{text::Label::human, stylometry::NgramCounter(3)},
                                                           {text::Label::ai, stylometry::NgramCounter(3)}};
    std::optional<std::ofstream> features_out;
    if (!analyze_.features_out.empty()) features_out = io::open_output(analyze_.features_out);
    json skipped = json::array();

    for (const auto& doc : docs) {
      const std::string clean = text::preprocess_text(doc.text);
      texts.push_back({doc.id, clean, doc.label});
      stylometry::FeatureVector f;
      try {
        f = stylometry::extract_features(clean);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoWords) throw;
        skipped.push_back({{"id", doc.id}, {"reason", "NoWords"}});
        continue;
      }
      (doc.label == text::Label::human ? human : ai).push_back(f);
      const auto tokens = text::tokenize_words(std::string_view(clean));
      bigrams.at(doc.label).add(tokens);
      trigrams.at(doc.label).add(tokens);
      if (features_out) {
        json row{{"id", doc.id}};
        row.update(io::features_json(f));
        row["label"] = text::to_string(doc.label);
        *features_out << row.dump() << '\n';
      }
    }
    if (human.empty() || ai.empty()) {
      throw Error(ErrorKind::MalformedInput, "analysis needs at least one usable document per label");
    }

    const auto basis = analyze_.basis == "welch_t" ? stats::SignificanceBasis::welch_t
                                                   : stats::SignificanceBasis::mann_whitney;
    const auto comparison = stats::compare_groups(human, ai, analyze_.alpha, {}, basis);
    json ngrams = json::object();
    for (auto label : {text::Label::human, text::Label::ai}) {
      ngrams[std::string(text::to_string(label))] = {
          {"bigrams", io::ngram_table_json(bigrams.at(label).table(analyze_.top_k))},
          {"trigrams", io::ngram_table_json(trigrams.at(label).table(analyze_.top_k))}};
    }
    json complexity = json::object();
    size_t significant = 0;
    for (auto name : stylometry::kComplexityMeasures) {
      const auto* m = comparison.find(name);
      const bool sig = m && m->significant;
      significant += sig ? 1 : 0;
      complexity[std::string(name)] = sig;
    }
    const json report{{"corpus_summary", io::corpus_summary_json(stylometry::corpus_summary(texts))},
                      {"comparison", io::comparison_json(comparison)},
                      {"complexity_measures", {{"significant", complexity}, {"significant_count", significant}}},
                      {"ngrams", ngrams},
                      {"skipped", skipped}};
    io::write_json(analyze_.out, report);

    auto m = manifest("analyze");
    m.flags = {{"in", analyze_.in},
               {"out", analyze_.out},
               {"alpha", analyze_.alpha},
               {"top_k", analyze_.top_k},
               {"significance", analyze_.basis}};
    m.inputs = {analyze_.in};
    m.outputs = {analyze_.out};
    if (features_out) m.outputs.push_back(analyze_.features_out);
    write_manifest(manifest_path_for(analyze_.out), m);
    return kOk;
  }

  // -------------------------------------------------------------------------
  void setup_split(CLI::App& app) {
    auto* cmd = app.add_subcommand("split", "Deterministic train/validation/test split of chunks");
    cmd->add_option("--in", split_.in, "Chunks (JSONL)")->required();
    cmd->add_option("--ratios", split_.ratios, "Three comma-separated fractions")->capture_default_str();
    cmd->add_option("--seed", split_.seed, "Shuffle seed")->capture_default_str();
    cmd->add_option("--mode", split_.mode, "chunk or grouped")
        ->capture_default_str()
        ->check(CLI::IsMember({"chunk", "grouped"}));
    cmd->add_option("--out-dir", split_.out_dir, "Output directory")->required();
    cmd->callback([this] { action_ = [this] { return do_split(); }; });
  }

  static std::array<double, 3> parse_ratios(const std::string& value) {
    std::array<double, 3> ratios{};
    std::stringstream ss(value);
    std::string item;
    size_t i = 0;
    while (std::getline(ss, item, ',')) {
      if (i == 3) throw Error(ErrorKind::InvalidConfig, "--ratios needs exactly three values");
      try {
        size_t used = 0;
        ratios[i] = std::stod(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidConfig, "--ratios: '" + item + "' is not a number");
      }
      ++i;
    }
    if (i != 3) throw Error(ErrorKind::InvalidConfig, "--ratios needs exactly three values");
    return ratios;
  }

  int do_split() {
    corpus::SplitConfig config;
    config.ratios = parse_ratios(split_.ratios);
    config.seed = split_.seed;
    config.mode = split_.mode == "grouped" ? corpus::SplitMode::grouped : corpus::SplitMode::chunk_level;
    config.validate();

    const auto chunks = io::read_chunks(split_.in);
    const auto result = corpus::split(chunks, config);
    const fs::path dir(split_.out_dir);
    std::vector<std::string> outputs;
    const auto parts = result.parts();
    for (size_t i = 0; i < 3; ++i) {
      const auto path = dir / (std::string(corpus::kSplitNames[i]) + ".jsonl");
      io::write_chunks(path, *parts[i]);
      outputs.push_back(path.string());
    }

    auto m = manifest("split");
    m.flags = {{"in", split_.in}, {"ratios", split_.ratios}, {"seed", split_.seed}, {"mode", split_.mode},
               {"out_dir", split_.out_dir}};
    m.inputs = {split_.in};
    m.outputs = outputs;
    m.seed = split_.seed;
    write_manifest(dir / "manifest.json", m,
                   {{"ratios", config.ratios}, {"mode", std::string(corpus::to_string(config.mode))},
                    {"counts", io::split_counts_json(result)}});
    err_ << "train " << result.train.size() << ", validation " << result.validation.size() << ", test "
         << result.test.size() << '\n';
    return kOk;
  }

  // -------------------------------------------------------------------------
  void setup_train(CLI::App& app) {
    auto* cmd = app.add_subcommand("train", "Train the stylometric logistic detector");
    cmd->add_option("--train", train_.train, "Training chunks (JSONL)")->required();
    cmd->add_option("--val", train_.val, "Validation chunks (JSONL)")->required();
    cmd->add_option("--lr", train_.config.learning_rate, "Learning rate")->capture_default_str();
    cmd->add_option("--epochs", train_.config.max_epochs, "Maximum epochs")->capture_default_str();
    cmd->add_option("--l2", train_.config.l2, "L2 penalty")->capture_default_str();
    cmd->add_option("--patience", train_.config.patience, "Early-stopping patience")->capture_default_str();
    cmd->add_option("--seed", train_.config.seed, "Seed for mini-batch order")->capture_default_str();
    cmd->add_option("--batch-size", train_.config.batch_size, "Mini-batch size, 0 for full batch")
        ->capture_default_str();
    cmd->add_option("--out", train_.out, "Model (JSON)")->required();
    cmd->add_option("--history", train_.history, "Per-epoch losses (JSON)");
    cmd->callback([this] { action_ = [this] { return do_train(); }; });
  }

  int do_train() {
    train_.config.validate();
    const auto train_rows = featurize(io::read_labeled_rows(train_.train), true);
    const auto val_rows = featurize(io::read_labeled_rows(train_.val), true);
    for (const auto& id : train_rows.skipped) err_ << "skipped " << id << ": no words\n";
    for (const auto& id : val_rows.skipped) err_ << "skipped " << id << ": no words\n";

    const auto result = detector::train(train_rows.data, val_rows.data, train_.config);
    io::write_json(train_.out, io::model_json(result.model));
    json history = json::array();
    for (const auto& e : result.history.epochs) {
      history.push_back({{"epoch", e.epoch}, {"train_loss", e.train_loss}, {"val_loss", e.val_loss}});
    }
    const json history_doc{{"epochs", history},
                           {"best_epoch", result.history.best_epoch},
                           {"stopped_early", result.history.stopped_early}};
    if (!train_.history.empty()) io::write_json(train_.history, history_doc);

    auto m = manifest("train");
    m.flags = {{"train", train_.train},
               {"val", train_.val},
               {"lr", train_.config.learning_rate},
               {"epochs", train_.config.max_epochs},
               {"l2", train_.config.l2},
               {"patience", train_.config.patience},
               {"seed", train_.config.seed},
               {"batch_size", train_.config.batch_size}};
    m.inputs = {train_.train, train_.val};
    m.outputs = {train_.out};
    if (!train_.history.empty()) m.outputs.push_back(train_.history);
    m.seed = train_.config.seed;
    write_manifest(manifest_path_for(train_.out), m,
                   {{"best_epoch", result.history.best_epoch},
                    {"epochs_run", result.history.epochs.size()},
                    {"dropped_features", result.model.scaler.dropped}});
    err_ << "best epoch " << result.history.best_epoch << " of " << result.history.epochs.size() << '\n';
    return kOk;
  }

  // -------------------------------------------------------------------------
  void setup_evaluate(CLI::App& app) {
    auto* cmd = app.add_subcommand("evaluate", "Score predictions against a labeled split");
    cmd->add_option("--test", eval_.test, "Labeled chunks (JSONL)")->required();
    auto* model = cmd->add_option("--model", eval_.model, "Detector model (JSON)");
    auto* pred = cmd->add_option("--pred", eval_.pred, "External predictions (JSONL: id, prob_ai, label_pred)");
    model->excludes(pred);
    pred->excludes(model);
    cmd->add_option("--pred-out", eval_.pred_out, "Write model predictions (JSONL)")->needs(model);
    cmd->add_option("--out", eval_.out, "Evaluation report (JSON)")->required();
    cmd->callback([this] { action_ = [this] { return do_evaluate(); }; });
  }

  int do_evaluate() {
    if (eval_.model.empty() == eval_.pred.empty()) {
      throw Error(ErrorKind::InvalidConfig, "exactly one of --model or --pred is required");
    }
    const auto rows = io::read_labeled_rows(eval_.test);
    if (rows.empty()) throw Error(ErrorKind::MalformedInput, "test split is empty");
    std::vector<text::Label> gold;
    std::vector<text::Label> predicted;
    gold.reserve(rows.size());
    for (const auto& r : rows) gold.push_back(r.label);

    std::string source;
    if (!eval_.model.empty()) {
      const auto model = io::parse_model(io::read_json(eval_.model));
      const auto features = featurize(rows, false);
      std::optional<std::ofstream> pred_out;
      if (!eval_.pred_out.empty()) pred_out = io::open_output(eval_.pred_out);
      for (size_t i = 0; i < features.data.size(); ++i) {
        const double p = detector::predict_proba(model, features.data.feature_names, features.data.rows[i]);
        const auto label = detector::decide(model, p);
        predicted.push_back(label);
        if (pred_out) *pred_out << io::prediction_json({rows[i].id, p, label}).dump() << '\n';
      }
      source = "model";
    } else {
      const auto preds = io::read_predictions(eval_.pred);
      std::unordered_map<std::string, text::Label> by_id;
      for (const auto& p : preds) by_id.emplace(p.id, p.label_pred);
      if (by_id.size() != rows.size()) {
        throw Error(ErrorKind::MalformedInput, std::to_string(preds.size()) + " predictions for " +
                                                   std::to_string(rows.size()) + " test rows");
      }
      for (const auto& r : rows) {
        const auto it = by_id.find(r.id);
        if (it == by_id.end()) throw Error(ErrorKind::MalformedInput, "no prediction for id '" + r.id + "'");
        predicted.push_back(it->second);
      }
      source = "predictions";
    }

    const auto report = detector::evaluate(predicted, gold);
    io::write_json(eval_.out, io::eval_report_json(report));

    auto m = manifest("evaluate");
    m.flags = {{"test", eval_.test}, {"model", eval_.model}, {"pred", eval_.pred}, {"out", eval_.out}};
    m.inputs = {eval_.test, eval_.model.empty() ? eval_.pred : eval_.model};
    m.outputs = {eval_.out};
    if (!eval_.pred_out.empty()) m.outputs.push_back(eval_.pred_out);
    write_manifest(manifest_path_for(eval_.out), m, {{"prediction_source", source}});
    err_ << std::fixed << std::setprecision(4) << "accuracy " << report.accuracy << ", f1 " << report.weighted.f1
         << ", precision " << report.weighted.precision << '\n';
    return kOk;
  }

  // -------------------------------------------------------------------------
  void setup_detect(CLI::App& app) {
    auto* cmd = app.add_subcommand("detect", "Classify texts with a trained detector");
    cmd->add_option("--model", detect_.model, "Detector model (JSON)")->required();
    auto* text_opt = cmd->add_option("--text", detect_.text, "A single text to classify");
    auto* in_opt = cmd->add_option("--in", detect_.in, "JSONL with \"id\" (or \"chunk_id\") and \"text\"");
    text_opt->excludes(in_opt);
    in_opt->excludes(text_opt);
    cmd->add_option("--out", detect_.out, "Predictions (JSONL); stdout when omitted");
    detect_cmd_ = cmd;
    cmd->callback([this, text_opt] {
      detect_.has_text = text_opt->count() > 0;
      action_ = [this] { return do_detect(); };
    });
  }

  int do_detect() {
    if (detect_.has_text == !detect_.in.empty()) {
      throw Error(ErrorKind::InvalidConfig, "exactly one of --text or --in is required\n" + detect_cmd_->help());
    }
    if (detect_.has_text && detect_.text.find_first_not_of(" \t\r\n") == std::string::npos) {
      throw Error(ErrorKind::InvalidConfig, "--text is empty\n" + detect_cmd_->help());
    }
    const auto model = io::parse_model(io::read_json(detect_.model));

    std::vector<std::pair<std::string, std::string>> inputs;
    if (detect_.has_text) {
      inputs.emplace_back("text", detect_.text);
    } else {
      io::read_jsonl(detect_.in, [&](const json& obj, size_t line_no) {
        const char* key = obj.contains("chunk_id") ? "chunk_id" : "id";
        inputs.emplace_back(io::detail::require_string(obj, key, line_no),
                            io::detail::require_string(obj, "text", line_no));
      });
    }

    std::optional<std::ofstream> file;
    if (!detect_.out.empty()) file = io::open_output(detect_.out);
    std::ostream& sink = file ? static_cast<std::ostream&>(*file) : out_;
    const auto names = detector::default_feature_names();
    for (const auto& [id, raw] : inputs) {
      stylometry::FeatureVector f;
      try {
        f = text_features(raw);
      } catch (const Error& e) {
        throw Error(e.kind(), "input '" + id + "': " + e.what());
      }
      const double p = detector::predict_proba(model, names, detector::feature_row(f, names));
      sink << io::prediction_json({id, p, detector::decide(model, p)}).dump() << '\n';
    }

    if (file) {
      file->close();
      auto m = manifest("detect");
      m.flags = {{"model", detect_.model}, {"in", detect_.in}, {"out", detect_.out}};
      m.inputs = {detect_.model};
      if (!detect_.in.empty()) m.inputs.push_back(detect_.in);
      m.outputs = {detect_.out};
      write_manifest(manifest_path_for(detect_.out), m);
    }
    return kOk;
  }

  std::ostream& out_;
  std::ostream& err_;
  std::vector<std::string> argv_;
  std::function<int()> action_;

  struct {
    std::string in, out;
  } pre_;
  struct {
    std::string in, out, summary;
    corpus::ChunkingConfig config;
  } chunk_;
  struct {
    std::string in, out, features_out;
    double alpha = 0.05;
    size_t top_k = 50;
    std::string basis = "mann_whitney";
  } analyze_;
  struct {
    std::string in, out_dir;
    std::string ratios = "0.8,0.1,0.1";
    uint64_t seed = 42;
    std::string mode = "chunk";
  } split_;
  struct {
    std::string train, val, out, history;
    detector::TrainConfig config;
  } train_;
  struct {
    std::string test, model, pred, pred_out, out;
  } eval_;
  struct {
    std::string model, text, in, out;
    bool has_text = false;
  } detect_;
  CLI::App* detect_cmd_ = nullptr;
};

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  Runner runner(out, err);
  return runner.run(argc, argv);
}

}  // namespace urdet::cli
