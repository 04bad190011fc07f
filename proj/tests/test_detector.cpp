#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "urdet/detector.hpp"

namespace urdet::detector {
namespace {

template <typename F>
ErrorKind error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Io;
}

Dataset make_dataset(std::vector<std::string> names) {
  Dataset d;
  d.feature_names = std::move(names);
  return d;
}

/// Two Gaussian clusters on feature "x" (human at 0, ai at `gap`), plus a noise feature.
Dataset clusters(std::mt19937_64& rng, size_t n, double gap) {
  std::normal_distribution<double> nd;
  Dataset d = make_dataset({"x", "noise"});
  for (size_t i = 0; i < n; ++i) {
    const Label label = i % 2 ? Label::ai : Label::human;
    d.add(std::to_string(i), {nd(rng) + (label == Label::ai ? gap : 0.0), nd(rng)}, label);
  }
  return d;
}

double accuracy(const DetectorModel& model, const Dataset& d) {
  size_t right = 0;
  for (size_t i = 0; i < d.size(); ++i) {
    right += decide(model, predict_proba(model, d.feature_names, d.rows[i])) == d.labels[i];
  }
  return static_cast<double>(right) / static_cast<double>(d.size());
}

// ---------------------------------------------------------------------------
// Scaler

TEST(Scaler, TwoPointColumn) {
  Dataset d = make_dataset({"a", "flat"});
  d.add("1", {1, 5}, Label::human);
  d.add("2", {3, 5}, Label::ai);
  const auto s = fit_scaler(d);
  ASSERT_EQ(s.feature_names, std::vector<std::string>{"a"});
  EXPECT_DOUBLE_EQ(s.means[0], 2.0);
  EXPECT_DOUBLE_EQ(s.stds[0], 1.0);
  EXPECT_EQ(s.dropped, std::vector<std::string>{"flat"});
}

TEST(Scaler, TransformedTrainingColumnsAreStandard) {
  std::mt19937_64 rng(1);
  const auto d = clusters(rng, 101, 3.0);
  const auto s = fit_scaler(d);
  const auto x = transform(s, d);
  for (size_t j = 0; j < s.feature_names.size(); ++j) {
    double sum = 0, ss = 0;
    for (const auto& row : x) sum += row[j];
    const double mu = sum / static_cast<double>(x.size());
    for (const auto& row : x) ss += (row[j] - mu) * (row[j] - mu);
    EXPECT_NEAR(mu, 0.0, 1e-12);
    EXPECT_NEAR(std::sqrt(ss / static_cast<double>(x.size())), 1.0, 1e-12);
  }
}

TEST(Scaler, Errors) {
  Dataset one = make_dataset({"a"});
  one.add("1", {1}, Label::human);
  EXPECT_EQ(error_of([&] { fit_scaler(one); }), ErrorKind::NoFeatures);
  Dataset flat = make_dataset({"a"});
  flat.add("1", {0.1}, Label::human);
  flat.add("2", {0.1}, Label::ai);
  flat.add("3", {0.1}, Label::ai);
  EXPECT_EQ(error_of([&] { fit_scaler(flat); }), ErrorKind::NoFeatures);
}

// ---------------------------------------------------------------------------
// Loss and gradient

TEST(Loss, ZeroParametersGiveLogTwo) {
  std::mt19937_64 rng(2);
  const auto d = clusters(rng, 20, 1.0);
  std::vector<double> y;
  for (auto l : d.labels) y.push_back(target(l));
  const auto g = loss_and_gradient(std::vector<double>{0, 0}, 0.0, Batch{d.rows, y}, 0.5);
  EXPECT_NEAR(g.loss, std::log(2.0), 1e-15);
}

TEST(Loss, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  const size_t dim = 5;
  for (int point = 0; point < 100; ++point) {
    std::vector<std::vector<double>> x(1 + rng() % 30, std::vector<double>(dim));
    std::vector<double> y;
    for (auto& row : x) {
      for (auto& v : row) v = nd(rng);
      y.push_back(static_cast<double>(rng() % 2));
    }
    std::vector<double> params(dim + 1);
    for (auto& p : params) p = 2.0 * nd(rng);
    const double l2 = 0.1 * static_cast<double>(rng() % 3);
    auto objective = [&](const std::vector<double>& p) {
      return loss_and_gradient(std::span<const double>(p.data(), dim), p[dim], Batch{x, y}, l2).loss;
    };
    const auto g = loss_and_gradient(std::span<const double>(params.data(), dim), params[dim], Batch{x, y}, l2);
    std::vector<double> analytic = g.grad_weights;
    analytic.push_back(g.grad_bias);
    const auto numeric = oracle::central_difference(objective, params, 1e-5);
    EXPECT_LT(oracle::relative_error(analytic, numeric), 1e-5) << "point " << point;
  }
}

TEST(Loss, SaturatedCorrectPredictionHasNoGradient) {
  const std::vector<std::vector<double>> x{{40.0}};
  const std::vector<double> y{1.0};
  const auto g = loss_and_gradient(std::vector<double>{1.0}, 0.0, Batch{x, y}, 0.0);
  EXPECT_LT(std::hypot(g.grad_weights[0], g.grad_bias), 1e-9);
  EXPECT_GE(g.loss, 0.0);
  EXPECT_LT(g.loss, 1e-15);
}

TEST(Loss, StableAtExtremeScores) {
  EXPECT_DOUBLE_EQ(sigmoid(-800), 0.0);
  EXPECT_DOUBLE_EQ(sigmoid(800), 1.0);
  EXPECT_NEAR(softplus(800), 800, 1e-12);
  EXPECT_NEAR(softplus(-800), 0, 1e-300);
  EXPECT_NEAR(sigmoid(1.0), 0.7310585786300049, 1e-15);
}

// ---------------------------------------------------------------------------
// Prediction

DetectorModel unit_model(std::vector<double> weights, double bias) {
  DetectorModel m;
  for (size_t k = 0; k < weights.size(); ++k) {
    m.feature_names.push_back("f" + std::to_string(k));
    m.scaler.means.push_back(0.0);
    m.scaler.stds.push_back(1.0);
  }
  m.scaler.feature_names = m.feature_names;
  m.weights = std::move(weights);
  m.bias = bias;
  return m;
}

TEST(Predict, HandSetWeights) {
  const auto m = unit_model({2.0}, -1.0);
  EXPECT_NEAR(predict_proba(m, std::map<std::string, double>{{"f0", 1.0}}), 0.7310585786300049, 1e-15);
  EXPECT_EQ(decide(m, 0.7310585786300049), Label::ai);
  EXPECT_EQ(decide(m, 0.49), Label::human);
  EXPECT_EQ(decide(m, 0.5), Label::ai);
}

TEST(Predict, ZeroModelIsOneHalfAndNegationComplements) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> nd;
  const auto zero = unit_model({0, 0, 0}, 0);
  auto m = unit_model({nd(rng), nd(rng), nd(rng)}, nd(rng));
  auto neg = m;
  for (auto& w : neg.weights) w = -w;
  neg.bias = -neg.bias;
  for (int i = 0; i < 50; ++i) {
    std::vector<double> row{nd(rng), nd(rng), nd(rng)};
    EXPECT_DOUBLE_EQ(predict_proba(zero, zero.feature_names, row), 0.5);
    const double p = predict_proba(m, m.feature_names, row);
    EXPECT_GT(p, 0.0);
    EXPECT_LT(p, 1.0);
    EXPECT_NEAR(predict_proba(neg, neg.feature_names, row), 1.0 - p, 1e-15);
  }
}

TEST(Predict, MissingFeature) {
  const auto m = unit_model({1.0, 1.0}, 0);
  EXPECT_EQ(error_of([&] { predict_proba(m, std::map<std::string, double>{{"f0", 1.0}}); }),
            ErrorKind::MissingFeature);
  EXPECT_EQ(error_of([&] { predict_proba(m, std::vector<std::string>{"f0", "g"}, std::vector<double>{1, 2}); }),
            ErrorKind::MissingFeature);
}

TEST(Predict, FeatureRowImputesUndefinedNgrams) {
  stylometry::FeatureVector f;
  f.word_count = 1;
  const auto names = default_feature_names();
  const auto row = feature_row(f, names);
  for (size_t k = 0; k < names.size(); ++k) {
    if (names[k] == "bigram_uniqueness" || names[k] == "trigram_uniqueness") {
      EXPECT_DOUBLE_EQ(row[k], 1.0);
    }
  }
  EXPECT_EQ(error_of([&] { feature_row(f, {"nope"}); }), ErrorKind::MissingFeature);
}

// ---------------------------------------------------------------------------
// Training

TEST(Train, SeparatedClusters) {
  std::mt19937_64 rng(5);
  const auto tr = clusters(rng, 200, 10.0);
  const auto va = clusters(rng, 200, 10.0);
  const auto result = train(tr, va, {});
  EXPECT_DOUBLE_EQ(accuracy(result.model, va), 1.0);
  EXPECT_GT(result.model.weights[0], 0.0);  // ai sits at larger x
  const auto flipped = clusters(rng, 200, -10.0);
  EXPECT_LT(train(flipped, flipped, {}).model.weights[0], 0.0);
}

TEST(Train, ShuffledLabelsStayNearChance) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> nd;
  auto random_set = [&](size_t n) {
    Dataset d = make_dataset({"a", "b", "c"});
    for (size_t i = 0; i < n; ++i) {
      d.add(std::to_string(i), {nd(rng), nd(rng), nd(rng)}, rng() % 2 ? Label::ai : Label::human);
    }
    return d;
  };
  const auto tr = random_set(1000);
  const auto va = random_set(1000);
  const auto result = train(tr, va, {});
  EXPECT_NEAR(accuracy(result.model, va), 0.5, 0.06);
}

TEST(Train, GradientDescentLossIsMonotone) {
  Dataset pair = make_dataset({"x"});
  pair.add("h", {0.0}, Label::human);
  pair.add("a", {1.0}, Label::ai);
  TrainConfig cfg;
  cfg.optimizer = Optimizer::gradient_descent;
  cfg.learning_rate = 0.1;
  cfg.max_epochs = 300;
  cfg.patience = 300;
  const auto result = train(pair, pair, cfg);
  ASSERT_GT(result.history.epochs.size(), 10u);
  for (size_t i = 1; i < result.history.epochs.size(); ++i) {
    EXPECT_LE(result.history.epochs[i].train_loss, result.history.epochs[i - 1].train_loss);
  }
  EXPECT_LT(result.history.epochs.back().train_loss, std::log(2.0));
}

TEST(Train, FullBatchGradientDescentOnClustersIsMonotone) {
  std::mt19937_64 rng(7);
  const auto tr = clusters(rng, 100, 1.0);
  TrainConfig cfg;
  cfg.optimizer = Optimizer::gradient_descent;
  cfg.learning_rate = 0.05;
  cfg.max_epochs = 200;
  cfg.patience = 200;
  const auto result = train(tr, tr, cfg);
  for (size_t i = 1; i < result.history.epochs.size(); ++i) {
    EXPECT_LE(result.history.epochs[i].train_loss, result.history.epochs[i - 1].train_loss + 1e-15);
  }
}

TEST(Train, EarlyStoppingReturnsBestEpoch) {
  std::mt19937_64 rng(8);
  const auto tr = clusters(rng, 60, 0.5);
  const auto va = clusters(rng, 60, 0.5);
  TrainConfig cfg;
  cfg.patience = 5;
  cfg.learning_rate = 0.5;
  const auto result = train(tr, va, cfg);
  const auto& h = result.history;
  double best = std::numeric_limits<double>::infinity();
  size_t best_epoch = 0;
  for (const auto& e : h.epochs) {
    if (e.val_loss < best) best = e.val_loss, best_epoch = e.epoch;
  }
  EXPECT_EQ(h.best_epoch, best_epoch);
  EXPECT_DOUBLE_EQ(result.model.training.at("best_val_loss"), best);
  if (h.stopped_early) {
    EXPECT_EQ(h.epochs.size(), best_epoch + cfg.patience);
  }
  // The returned parameters reproduce the best validation loss.
  std::vector<double> y;
  for (auto l : va.labels) y.push_back(target(l));
  const auto x = transform(result.model.scaler, va);
  EXPECT_NEAR(loss_and_gradient(result.model, Batch{x, y}, 0.0).loss, best, 1e-12);
}

TEST(Train, DeterministicForSeed) {
  std::mt19937_64 rng(9);
  const auto tr = clusters(rng, 120, 1.5);
  const auto va = clusters(rng, 40, 1.5);
  TrainConfig cfg;
  cfg.batch_size = 16;
  const auto a = train(tr, va, cfg);
  const auto b = train(tr, va, cfg);
  EXPECT_EQ(a.model.weights, b.model.weights);
  EXPECT_EQ(a.model.bias, b.model.bias);
  cfg.seed = 43;
  const auto c = train(tr, va, cfg);
  EXPECT_NE(a.model.weights, c.model.weights);
}

TEST(Train, DecisionsInvariantToFeatureScaling) {
  std::mt19937_64 rng(10);
  const auto tr = clusters(rng, 150, 1.0);
  const auto va = clusters(rng, 150, 1.0);
  auto scaled = [](Dataset d, double c) {
    for (auto& row : d.rows) row[0] *= c;
    return d;
  };
  const auto base = train(tr, va, {});
  for (double c : {0.001, 3.0, 1e4}) {
    const auto s = train(scaled(tr, c), scaled(va, c), {});
    const auto sva = scaled(va, c);
    for (size_t i = 0; i < va.size(); ++i) {
      const double p = predict_proba(base.model, va.feature_names, va.rows[i]);
      const double q = predict_proba(s.model, sva.feature_names, sva.rows[i]);
      EXPECT_NEAR(p, q, 1e-9);
      if (std::abs(p - 0.5) > 1e-9) {
        EXPECT_EQ(decide(base.model, p), decide(s.model, q));
      }
    }
  }
}

TEST(Train, Errors) {
  std::mt19937_64 rng(11);
  const auto tr = clusters(rng, 20, 1.0);
  Dataset one_label = make_dataset({"x", "noise"});
  one_label.add("1", {1, 2}, Label::ai);
  one_label.add("2", {2, 1}, Label::ai);
  EXPECT_EQ(error_of([&] { train(one_label, tr, {}); }), ErrorKind::MalformedInput);
  TrainConfig bad;
  bad.learning_rate = 0;
  EXPECT_EQ(error_of([&] { train(tr, tr, bad); }), ErrorKind::InvalidConfig);
  bad = {};
  bad.patience = 0;
  EXPECT_EQ(error_of([&] { train(tr, tr, bad); }), ErrorKind::InvalidConfig);
  TrainConfig hot;
  hot.optimizer = Optimizer::gradient_descent;
  hot.learning_rate = 1e308;
  hot.l2 = 1.0;
  EXPECT_EQ(error_of([&] { train(tr, tr, hot); }), ErrorKind::Diverged);
}

// ---------------------------------------------------------------------------
// Evaluation

TEST(Evaluate, HandConfusionMatrix) {
  const auto r = evaluate(Confusion{3, 1, 2, 4});
  EXPECT_EQ(r.n, 10u);
  EXPECT_NEAR(r.accuracy, 0.7, 1e-15);
  EXPECT_NEAR(*r.ai.precision, 0.75, 1e-15);
  EXPECT_NEAR(*r.ai.recall, 0.6, 1e-15);
  EXPECT_NEAR(*r.ai.f1, 2.0 * 0.75 * 0.6 / 1.35, 1e-15);
  EXPECT_NEAR(*r.ai.f1, 0.6667, 1e-4);
  // human: tp=4, fp=2, fn=1
  EXPECT_NEAR(*r.human.precision, 4.0 / 6.0, 1e-15);
  EXPECT_NEAR(*r.human.recall, 0.8, 1e-15);
  EXPECT_EQ(r.ai.support, 5u);
  EXPECT_EQ(r.human.support, 5u);
}

TEST(Evaluate, PerfectPredictions) {
  const std::vector<Label> gold{Label::ai, Label::human, Label::ai};
  const auto r = evaluate(gold, gold);
  EXPECT_DOUBLE_EQ(r.accuracy, 1.0);
  EXPECT_DOUBLE_EQ(r.weighted.f1, 1.0);
  EXPECT_DOUBLE_EQ(r.weighted.precision, 1.0);
  EXPECT_DOUBLE_EQ(*r.ai.recall, 1.0);
}

TEST(Evaluate, IdentitiesOnRandomPredictions) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    const size_t n = 1 + rng() % 60;
    std::vector<Label> pred(n), gold(n);
    for (size_t k = 0; k < n; ++k) {
      pred[k] = rng() % 3 ? Label::ai : Label::human;
      gold[k] = rng() % 2 ? Label::ai : Label::human;
    }
    const auto r = evaluate(pred, gold);
    const auto& c = r.confusion;
    EXPECT_EQ(c.tp + c.fp + c.fn + c.tn, n);
    EXPECT_NEAR(r.accuracy, static_cast<double>(c.tp + c.tn) / static_cast<double>(n), 1e-12);
    EXPECT_NEAR(r.accuracy, r.weighted.recall, 1e-12);
    const double f_ai = r.ai.f1.value_or(0.0), f_h = r.human.f1.value_or(0.0);
    EXPECT_GE(r.weighted.f1, std::min(f_ai, f_h) - 1e-12);
    EXPECT_LE(r.weighted.f1, std::max(f_ai, f_h) + 1e-12);
  }
}

TEST(Evaluate, UndefinedPrecisionWhenClassNeverPredicted) {
  const std::vector<Label> pred{Label::human, Label::human};
  const std::vector<Label> gold{Label::ai, Label::human};
  const auto r = evaluate(pred, gold);
  EXPECT_FALSE(r.ai.precision.has_value());
  EXPECT_FALSE(r.ai.f1.has_value());
  EXPECT_DOUBLE_EQ(*r.ai.recall, 0.0);
}

TEST(Evaluate, LengthMismatch) {
  const std::vector<Label> a{Label::ai}, b{Label::ai, Label::human};
  EXPECT_EQ(error_of([&] { evaluate(a, b); }), ErrorKind::LengthMismatch);
}

}  // namespace
}  // namespace urdet::detector
