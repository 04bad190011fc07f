#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "urdet/error.hpp"
#include "urdet/random.hpp"
#include "urdet/stylometry.hpp"
#include "urdet/text_norm.hpp"

namespace urdet::detector {

using text::Label;

// ---------------------------------------------------------------------------
// Feature rows

/// Detector inputs, in column order.
inline std::vector<std::string> default_feature_names() {
  return {stylometry::kMetricNames.begin(), stylometry::kMetricNames.end()};
}

/// Undefined n-gram uniqueness (fewer than n words) is read as 1.0: with no
/// windows there are no repeats. This is the only imputation in the detector.
inline std::vector<double> feature_row(const stylometry::FeatureVector& f,
                                       const std::vector<std::string>& names = default_feature_names()) {
  std::vector<double> row;
  row.reserve(names.size());
  for (const auto& name : names) {
    const auto v = stylometry::metric(f, name);
    if (v) {
      row.push_back(*v);
    } else if (name == "bigram_uniqueness" || name == "trigram_uniqueness") {
      row.push_back(1.0);
    } else {
      throw Error(ErrorKind::MissingFeature, "unknown feature '" + name + "'");
    }
  }
  return row;
}

struct Dataset {
  std::vector<std::string> feature_names;
  std::vector<std::string> ids;
  std::vector<std::vector<double>> rows;
  std::vector<Label> labels;

  size_t size() const { return rows.size(); }

  void add(std::string id, std::vector<double> row, Label label) {
    if (row.size() != feature_names.size()) {
      throw Error(ErrorKind::LengthMismatch, "row width does not match feature names");
    }
    ids.push_back(std::move(id));
    rows.push_back(std::move(row));
    labels.push_back(label);
  }
};

inline double target(Label l) { return l == Label::ai ? 1.0 : 0.0; }

// ---------------------------------------------------------------------------
// Standardization

struct ScalerState {
  std::vector<std::string> feature_names;  // retained, in input order
  std::vector<double> means;
  std::vector<double> stds;  // population
  std::vector<std::string> dropped;  // zero training variance
};

inline ScalerState fit_scaler(const Dataset& train) {
  if (train.size() < 2) throw Error(ErrorKind::NoFeatures, "scaler needs at least two training rows");
  ScalerState s;
  const double n = static_cast<double>(train.size());
  for (size_t j = 0; j < train.feature_names.size(); ++j) {
    double sum = 0.0;
    for (const auto& row : train.rows) sum += row[j];
    const double mu = sum / n;
    double ss = 0.0;
    for (const auto& row : train.rows) ss += (row[j] - mu) * (row[j] - mu);
    const double sd = std::sqrt(ss / n);
    // Rounding leaves ~1e-17 residue on constant columns, hence the relative cutoff.
    if (!(sd > 1e-12 * std::max(1.0, std::abs(mu)))) {
      s.dropped.push_back(train.feature_names[j]);
      continue;
    }
    s.feature_names.push_back(train.feature_names[j]);
    s.means.push_back(mu);
    s.stds.push_back(sd);
  }
  if (s.feature_names.empty()) throw Error(ErrorKind::NoFeatures, "every feature has zero training variance");
  return s;
}

/// Positions of the scaler's retained features inside `input_names`.
inline std::vector<size_t> column_map(const ScalerState& scaler, const std::vector<std::string>& input_names) {
  std::vector<size_t> cols;
  cols.reserve(scaler.feature_names.size());
  for (const auto& name : scaler.feature_names) {
    const auto it = std::find(input_names.begin(), input_names.end(), name);
    if (it == input_names.end()) throw Error(ErrorKind::MissingFeature, "input lacks feature '" + name + "'");
    cols.push_back(static_cast<size_t>(it - input_names.begin()));
  }
  return cols;
}

inline std::vector<double> transform(const ScalerState& scaler, std::span<const size_t> cols,
                                     std::span<const double> row) {
  std::vector<double> out(cols.size());
  for (size_t k = 0; k < cols.size(); ++k) out[k] = (row[cols[k]] - scaler.means[k]) / scaler.stds[k];
  return out;
}

inline std::vector<std::vector<double>> transform(const ScalerState& scaler, const Dataset& data) {
  const auto cols = column_map(scaler, data.feature_names);
  std::vector<std::vector<double>> out;
  out.reserve(data.size());
  for (const auto& row : data.rows) out.push_back(transform(scaler, cols, row));
  return out;
}

// ---------------------------------------------------------------------------
// Logistic model

struct DetectorModel {
  std::vector<std::string> feature_names;  // same order as scaler.feature_names
  std::vector<double> weights;
  double bias = 0.0;
  ScalerState scaler;
  double threshold = 0.5;
  std::map<std::string, double> training;  // metadata: epochs, best epoch, losses, hyperparameters
};

inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

/// log(1 + exp(z)) without overflow.
inline double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

/// Scaled rows with 0/1 targets.
struct Batch {
  std::span<const std::vector<double>> x;
  std::span<const double> y;
};

struct LossGradient {
  double loss = 0.0;
  std::vector<double> grad_weights;
  double grad_bias = 0.0;
};

inline double linear_score(std::span<const double> weights, double bias, std::span<const double> x) {
  double z = bias;
  for (size_t j = 0; j < weights.size(); ++j) z += weights[j] * x[j];
  return z;
}

/// Mean cross-entropy plus (l2 / 2) * ||w||^2 (bias unpenalized), and its
/// exact gradient.
inline LossGradient loss_and_gradient(std::span<const double> weights, double bias, const Batch& batch,
                                      double l2) {
  if (batch.x.empty()) throw Error(ErrorKind::LengthMismatch, "empty batch");
  LossGradient out;
  out.grad_weights.assign(weights.size(), 0.0);
  for (size_t i = 0; i < batch.x.size(); ++i) {
    const double z = linear_score(weights, bias, batch.x[i]);
    // -[y log s + (1-y) log(1-s)] == softplus(z) - y z
    out.loss += softplus(z) - batch.y[i] * z;
    const double residual = sigmoid(z) - batch.y[i];
    for (size_t j = 0; j < weights.size(); ++j) out.grad_weights[j] += residual * batch.x[i][j];
    out.grad_bias += residual;
  }
  const double n = static_cast<double>(batch.x.size());
  out.loss /= n;
  out.grad_bias /= n;
  double norm2 = 0.0;
  for (size_t j = 0; j < weights.size(); ++j) {
    out.grad_weights[j] = out.grad_weights[j] / n + l2 * weights[j];
    norm2 += weights[j] * weights[j];
  }
  out.loss += 0.5 * l2 * norm2;
  return out;
}

inline LossGradient loss_and_gradient(const DetectorModel& model, const Batch& batch, double l2) {
  return loss_and_gradient(model.weights, model.bias, batch, l2);
}

/// Probability of the ai label for a raw (unscaled) row laid out by `input_names`.
inline double predict_proba(const DetectorModel& model, const std::vector<std::string>& input_names,
                            std::span<const double> row) {
  if (row.size() != input_names.size()) throw Error(ErrorKind::LengthMismatch, "row width mismatch");
  const auto cols = column_map(model.scaler, input_names);
  const auto scaled = transform(model.scaler, cols, row);
  return sigmoid(linear_score(model.weights, model.bias, scaled));
}

inline double predict_proba(const DetectorModel& model, const std::map<std::string, double>& features) {
  std::vector<double> scaled;
  scaled.reserve(model.feature_names.size());
  for (size_t k = 0; k < model.scaler.feature_names.size(); ++k) {
    const auto& name = model.scaler.feature_names[k];
    const auto it = features.find(name);
    if (it == features.end()) throw Error(ErrorKind::MissingFeature, "missing feature '" + name + "'");
    scaled.push_back((it->second - model.scaler.means[k]) / model.scaler.stds[k]);
  }
  return sigmoid(linear_score(model.weights, model.bias, scaled));
}

inline double predict_proba(const DetectorModel& model, const stylometry::FeatureVector& features) {
  const auto names = default_feature_names();
  return predict_proba(model, names, feature_row(features, names));
}

inline Label decide(const DetectorModel& model, double prob_ai) {
  return prob_ai >= model.threshold ? Label::ai : Label::human;
}

// ---------------------------------------------------------------------------
// Training

enum class Optimizer { adam, gradient_descent };

struct TrainConfig {
  double learning_rate = 0.05;
  size_t max_epochs = 500;
  double l2 = 1e-3;
  size_t patience = 20;
  uint64_t seed = 42;
  size_t batch_size = 0;  // 0 = full batch
  Optimizer optimizer = Optimizer::adam;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  void validate() const {
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
      throw Error(ErrorKind::InvalidConfig, "learning_rate must be positive");
    }
    if (patience < 1) throw Error(ErrorKind::InvalidConfig, "patience must be at least 1");
    if (max_epochs < 1) throw Error(ErrorKind::InvalidConfig, "max_epochs must be at least 1");
    if (l2 < 0.0) throw Error(ErrorKind::InvalidConfig, "l2 must be nonnegative");
  }
};

struct EpochRecord {
  size_t epoch = 0;  // 1-based
  double train_loss = 0.0;  // regularized objective over the whole training split
  double val_loss = 0.0;  // mean cross-entropy on validation
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;
  size_t best_epoch = 0;
  bool stopped_early = false;
};

struct TrainResult {
  DetectorModel model;
  TrainHistory history;
};

namespace detail {

class AdamState {
 public:
  AdamState(size_t dim, const TrainConfig& cfg) : cfg_(cfg), m_(dim + 1, 0.0), v_(dim + 1, 0.0) {}

  void step(std::vector<double>& w, double& b, const LossGradient& g) {
    ++t_;
    const double c1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
    auto update = [&](double& param, double grad, size_t k) {
      m_[k] = cfg_.beta1 * m_[k] + (1.0 - cfg_.beta1) * grad;
      v_[k] = cfg_.beta2 * v_[k] + (1.0 - cfg_.beta2) * grad * grad;
      param -= cfg_.learning_rate * (m_[k] / c1) / (std::sqrt(v_[k] / c2) + cfg_.epsilon);
    };
    for (size_t j = 0; j < w.size(); ++j) update(w[j], g.grad_weights[j], j);
    update(b, g.grad_bias, w.size());
  }

 private:
  TrainConfig cfg_;
  std::vector<double> m_;
  std::vector<double> v_;
  uint64_t t_ = 0;
};

inline std::vector<double> targets(const Dataset& d) {
  std::vector<double> y;
  y.reserve(d.size());
  for (Label l : d.labels) y.push_back(target(l));
  return y;
}

inline double cross_entropy(std::span<const double> w, double b, const Batch& batch) {
  return loss_and_gradient(w, b, batch, 0.0).loss;
}

}  // namespace detail

/// Fits the scaler on `train`, then minimizes the regularized logistic loss.
/// Validation loss is checked after every epoch; training stops after
/// `patience` epochs without improvement and the best-validation parameters
/// are returned.
inline TrainResult train(const Dataset& train_set, const Dataset& val_set, const TrainConfig& config) {
  config.validate();
  if (train_set.size() == 0 || val_set.size() == 0) {
    throw Error(ErrorKind::MalformedInput, "train and validation splits must be nonempty");
  }
  const bool has_human = std::count(train_set.labels.begin(), train_set.labels.end(), Label::human) > 0;
  const bool has_ai = std::count(train_set.labels.begin(), train_set.labels.end(), Label::ai) > 0;
  if (!has_human || !has_ai) throw Error(ErrorKind::MalformedInput, "training split must contain both labels");

  TrainResult result;
  DetectorModel& model = result.model;
  model.scaler = fit_scaler(train_set);
  model.feature_names = model.scaler.feature_names;

  const auto x_train = transform(model.scaler, train_set);
  const auto x_val = transform(model.scaler, val_set);
  const auto y_train = detail::targets(train_set);
  const auto y_val = detail::targets(val_set);
  const Batch full_train{x_train, y_train};
  const Batch full_val{x_val, y_val};

  const size_t dim = model.feature_names.size();
  std::vector<double> w(dim, 0.0);
  double b = 0.0;
  std::vector<double> best_w = w;
  double best_b = b;
  double best_val = std::numeric_limits<double>::infinity();
  size_t since_best = 0;

  detail::AdamState adam(dim, config);
  std::mt19937_64 rng(config.seed);
  std::vector<size_t> order(x_train.size());
  std::iota(order.begin(), order.end(), size_t{0});
  const size_t batch_size =
      config.batch_size == 0 ? x_train.size() : std::min(config.batch_size, x_train.size());
  std::vector<std::vector<double>> bx;
  std::vector<double> by;

  auto apply = [&](const LossGradient& g) {
    if (config.optimizer == Optimizer::adam) {
      adam.step(w, b, g);
    } else {
      for (size_t j = 0; j < dim; ++j) w[j] -= config.learning_rate * g.grad_weights[j];
      b -= config.learning_rate * g.grad_bias;
    }
  };

  for (size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    if (batch_size == x_train.size()) {
      apply(loss_and_gradient(w, b, full_train, config.l2));
    } else {
      seeded_shuffle(std::span<size_t>(order), rng);
      for (size_t start = 0; start < order.size(); start += batch_size) {
        const size_t end = std::min(start + batch_size, order.size());
        bx.clear();
        by.clear();
        for (size_t k = start; k < end; ++k) {
          bx.push_back(x_train[order[k]]);
          by.push_back(y_train[order[k]]);
        }
        apply(loss_and_gradient(w, b, Batch{bx, by}, config.l2));
      }
    }

    const double train_loss = loss_and_gradient(w, b, full_train, config.l2).loss;
    const double val_loss = detail::cross_entropy(w, b, full_val);
    if (!std::isfinite(train_loss) || !std::isfinite(val_loss) || !std::isfinite(b)) {
      throw Error(ErrorKind::Diverged, "loss became non-finite at epoch " + std::to_string(epoch) +
                                           "; lower the learning rate");
    }
    result.history.epochs.push_back({epoch, train_loss, val_loss});

    if (val_loss < best_val) {
      best_val = val_loss;
      best_w = w;
      best_b = b;
      result.history.best_epoch = epoch;
      since_best = 0;
    } else if (++since_best >= config.patience) {
      result.history.stopped_early = true;
      break;
    }
  }

  model.weights = best_w;
  model.bias = best_b;
  model.training = {
      {"epochs_run", static_cast<double>(result.history.epochs.size())},
      {"best_epoch", static_cast<double>(result.history.best_epoch)},
      {"best_val_loss", best_val},
      {"learning_rate", config.learning_rate},
      {"l2", config.l2},
      {"patience", static_cast<double>(config.patience)},
      {"max_epochs", static_cast<double>(config.max_epochs)},
      {"batch_size", static_cast<double>(config.batch_size)},
      {"seed", static_cast<double>(config.seed)},
  };
  return result;
}

// ---------------------------------------------------------------------------
// Evaluation

struct Confusion {
  size_t tp = 0;  // positive class: ai
  size_t fp = 0;
  size_t fn = 0;
  size_t tn = 0;
  size_t n() const { return tp + fp + fn + tn; }
};

struct ClassMetrics {
  std::optional<double> precision;  // empty when nothing was predicted as this class
  std::optional<double> recall;     // empty when the class has no gold support
  std::optional<double> f1;
  size_t support = 0;
};

struct AveragedMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct EvalReport {
  Confusion confusion;
  size_t n = 0;
  double accuracy = 0.0;
  ClassMetrics ai;
  ClassMetrics human;
  AveragedMetrics macro;
  AveragedMetrics weighted;  // support-weighted; the headline figures
};

inline ClassMetrics class_metrics(size_t tp, size_t fp, size_t fn) {
  ClassMetrics m;
  m.support = tp + fn;
  if (tp + fp > 0) m.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  if (tp + fn > 0) m.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  if (m.precision && m.recall) {
    const double denom = *m.precision + *m.recall;
    m.f1 = denom > 0.0 ? 2.0 * *m.precision * *m.recall / denom : 0.0;
  }
  return m;
}

inline EvalReport evaluate(const Confusion& c) {
  if (c.n() == 0) throw Error(ErrorKind::LengthMismatch, "no predictions to evaluate");
  EvalReport r;
  r.confusion = c;
  r.n = c.n();
  r.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(r.n);
  r.ai = class_metrics(c.tp, c.fp, c.fn);
  r.human = class_metrics(c.tn, c.fn, c.fp);

  // Undefined per-class values count as 0 in the averages.
  const double n = static_cast<double>(r.n);
  const double w_ai = static_cast<double>(r.ai.support) / n;
  const double w_human = static_cast<double>(r.human.support) / n;
  auto v = [](const std::optional<double>& x) { return x.value_or(0.0); };
  r.macro = {(v(r.ai.precision) + v(r.human.precision)) / 2.0, (v(r.ai.recall) + v(r.human.recall)) / 2.0,
             (v(r.ai.f1) + v(r.human.f1)) / 2.0};
  r.weighted = {w_ai * v(r.ai.precision) + w_human * v(r.human.precision),
                w_ai * v(r.ai.recall) + w_human * v(r.human.recall),
                w_ai * v(r.ai.f1) + w_human * v(r.human.f1)};
  return r;
}

inline EvalReport evaluate(std::span<const Label> predicted, std::span<const Label> gold) {
  if (predicted.size() != gold.size()) {
    throw Error(ErrorKind::LengthMismatch, std::to_string(predicted.size()) + " predictions for " +
                                               std::to_string(gold.size()) + " gold labels");
  }
  Confusion c;
  for (size_t i = 0; i < gold.size(); ++i) {
    const bool pred_ai = predicted[i] == Label::ai;
    const bool gold_ai = gold[i] == Label::ai;
    if (pred_ai && gold_ai) ++c.tp;
    else if (pred_ai) ++c.fp;
    else if (gold_ai) ++c.fn;
    else ++c.tn;
  }
  return evaluate(c);
}

}  // namespace urdet::detector
