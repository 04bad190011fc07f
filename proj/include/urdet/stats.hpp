#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "urdet/error.hpp"
#include "urdet/stylometry.hpp"

namespace urdet::stats {

// ---------------------------------------------------------------------------
// Distribution functions

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

/// Two-sided normal tail, 2 * (1 - Phi(|z|)), without cancellation.
inline double normal_two_sided_p(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

namespace detail {

// Modified Lentz evaluation of the incomplete beta continued fraction.
inline double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace detail

/// Regularized incomplete beta function I_x(a, b).
inline double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

/// Two-sided Student-t tail probability P(|T| >= |t|).
inline double student_t_two_sided_p(double t, double df) {
  if (std::isinf(t)) return 0.0;
  return incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

inline double student_t_cdf(double t, double df) {
  const double tail = 0.5 * student_t_two_sided_p(t, df);
  return t >= 0.0 ? 1.0 - tail : tail;
}

// ---------------------------------------------------------------------------
// Tests

enum class Method { welch_t, mann_whitney_exact, mann_whitney_normal };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::welch_t: return "welch_t";
    case Method::mann_whitney_exact: return "mann_whitney_exact";
    case Method::mann_whitney_normal: return "mann_whitney_normal";
  }
  return "unknown";
}

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  Method method = Method::welch_t;
  size_t n1 = 0;
  size_t n2 = 0;
  std::optional<double> df;  // Welch-Satterthwaite degrees of freedom
};

inline double mean(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

/// Unbiased (n - 1) variance.
inline double sample_variance(std::span<const double> x) {
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return ss / static_cast<double>(x.size() - 1);
}

inline TestResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error(ErrorKind::DegenerateSample, "Welch t-test needs at least two observations per sample");
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double diff = mean(a) - mean(b);
  const double va = sample_variance(a) / na;
  const double vb = sample_variance(b) / nb;
  const double se2 = va + vb;

  TestResult r;
  r.method = Method::welch_t;
  r.n1 = a.size();
  r.n2 = b.size();
  if (se2 == 0.0) {
    if (diff == 0.0) throw Error(ErrorKind::DegenerateSample, "both samples constant and equal; t undefined");
    r.statistic = diff > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    r.p_value = 0.0;
    return r;
  }
  r.statistic = diff / std::sqrt(se2);
  const double df = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  r.df = df;
  r.p_value = std::clamp(student_t_two_sided_p(r.statistic, df), 0.0, 1.0);
  return r;
}

/// Mid-ranks (1-based) of the pooled sample, doubled so they stay integral.
inline std::vector<long long> doubled_midranks(std::span<const double> pooled) {
  std::vector<size_t> order(pooled.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](size_t i, size_t j) { return pooled[i] < pooled[j]; });
  std::vector<long long> ranks(pooled.size());
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    while (j + 1 < order.size() && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    // positions i..j (0-based) share rank ((i+1)+(j+1))/2; doubled: i+j+2
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = static_cast<long long>(i + j + 2);
    i = j + 1;
  }
  return ranks;
}

struct UStatistics {
  double u_a = 0.0;  // #{x > y} + 0.5 #{x == y}
  double u_b = 0.0;
};

inline UStatistics u_statistics(std::span<const double> a, std::span<const double> b) {
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const auto ranks = doubled_midranks(pooled);
  long long rank_sum_a2 = 0;
  for (size_t i = 0; i < a.size(); ++i) rank_sum_a2 += ranks[i];
  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  UStatistics u;
  u.u_a = static_cast<double>(rank_sum_a2) / 2.0 - n1 * (n1 + 1.0) / 2.0;
  u.u_b = n1 * n2 - u.u_a;
  return u;
}

/// Largest pooled size for which the exact permutation distribution is used.
inline constexpr size_t kExactMaxTotal = 12;

namespace detail {

// Exact two-sided p under the permutation null, conditional on the observed
// tie pattern. Counts subsets of size n1 by their doubled rank sum.
inline double mann_whitney_exact_p(const std::vector<long long>& ranks2, size_t n1, long long rank_sum_a2) {
  const size_t total = ranks2.size();
  const size_t n2 = total - n1;
  const long long max_sum = std::accumulate(ranks2.begin(), ranks2.end(), 0LL);
  // ways[k][s]: subsets of size k with doubled rank sum s
  std::vector<std::vector<double>> ways(n1 + 1, std::vector<double>(static_cast<size_t>(max_sum) + 1, 0.0));
  ways[0][0] = 1.0;
  for (long long r : ranks2) {
    for (size_t k = n1; k >= 1; --k) {
      for (long long s = max_sum; s >= r; --s) ways[k][static_cast<size_t>(s)] += ways[k - 1][static_cast<size_t>(s - r)];
    }
  }
  // 2U = S - n1(n1+1); centre of 2U is n1*n2.
  const long long offset = static_cast<long long>(n1 * (n1 + 1));
  const long long centre = static_cast<long long>(n1 * n2);
  const long long observed_dev = std::llabs(rank_sum_a2 - offset - centre);
  double extreme = 0.0;
  double all = 0.0;
  for (long long s = 0; s <= max_sum; ++s) {
    const double w = ways[n1][static_cast<size_t>(s)];
    if (w == 0.0) continue;
    all += w;
    if (std::llabs(s - offset - centre) >= observed_dev) extreme += w;
  }
  return std::min(1.0, extreme / all);
}

}  // namespace detail

/// Two-sided Mann-Whitney U test. The statistic is min(U_a, U_b). Pooled
/// sizes up to `exact_max_total` use exact enumeration (ties included);
/// larger samples use the tie-corrected normal approximation with continuity
/// correction.
inline TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                                 size_t exact_max_total = kExactMaxTotal) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::EmptySample, "Mann-Whitney U needs nonempty samples");
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const auto ranks2 = doubled_midranks(pooled);
  long long rank_sum_a2 = 0;
  for (size_t i = 0; i < a.size(); ++i) rank_sum_a2 += ranks2[i];

  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  const double u_a = static_cast<double>(rank_sum_a2) / 2.0 - n1 * (n1 + 1.0) / 2.0;
  const double u_b = n1 * n2 - u_a;

  TestResult r;
  r.statistic = std::min(u_a, u_b);
  r.n1 = a.size();
  r.n2 = b.size();

  if (pooled.size() <= exact_max_total) {
    r.method = Method::mann_whitney_exact;
    r.p_value = detail::mann_whitney_exact_p(ranks2, a.size(), rank_sum_a2);
    return r;
  }

  r.method = Method::mann_whitney_normal;
  const double n = n1 + n2;
  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  double tie_term = 0.0;
  for (size_t i = 0; i < sorted.size();) {
    size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }
  const double variance = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
  if (variance <= 0.0) {
    r.p_value = 1.0;  // every observation tied
    return r;
  }
  const double mu = n1 * n2 / 2.0;
  const double z = std::max(0.0, std::abs(u_a - mu) - 0.5) / std::sqrt(variance);
  r.p_value = std::min(1.0, normal_two_sided_p(z));
  return r;
}

// ---------------------------------------------------------------------------
// Group comparison

enum class SignificanceBasis { mann_whitney, welch_t };

struct MetricComparison {
  std::string metric;
  size_t human_n = 0;
  size_t ai_n = 0;
  double human_mean = 0.0;
  double ai_mean = 0.0;
  double human_std = 0.0;  // sample std; 0 for a single observation
  double ai_std = 0.0;
  std::optional<TestResult> t_result;
  std::optional<TestResult> u_result;
  std::optional<std::string> t_error;
  std::optional<std::string> u_error;
  bool significant = false;
};

struct ComparisonReport {
  double alpha = 0.05;
  SignificanceBasis basis = SignificanceBasis::mann_whitney;
  std::vector<MetricComparison> metrics;  // sorted by metric name

  const MetricComparison* find(std::string_view name) const {
    for (const auto& m : metrics) {
      if (m.metric == name) return &m;
    }
    return nullptr;
  }
};

struct GroupSamples {
  std::vector<double> human;
  std::vector<double> ai;
};

inline MetricComparison compare_metric(const std::string& name, const GroupSamples& samples, double alpha,
                                       SignificanceBasis basis) {
  MetricComparison m;
  m.metric = name;
  m.human_n = samples.human.size();
  m.ai_n = samples.ai.size();
  auto describe = [](const std::vector<double>& x, double& mu, double& sd) {
    if (x.empty()) return;
    mu = mean(x);
    sd = x.size() > 1 ? std::sqrt(sample_variance(x)) : 0.0;
  };
  describe(samples.human, m.human_mean, m.human_std);
  describe(samples.ai, m.ai_mean, m.ai_std);

  try {
    m.t_result = welch_t_test(samples.human, samples.ai);
  } catch (const Error& e) {
    m.t_error = e.what();
  }
  try {
    m.u_result = mann_whitney_u(samples.human, samples.ai);
  } catch (const Error& e) {
    m.u_error = e.what();
  }
  const auto& basis_result = basis == SignificanceBasis::mann_whitney ? m.u_result : m.t_result;
  m.significant = basis_result && basis_result->p_value < alpha;
  return m;
}

/// Runs both tests on every FeatureVector metric plus any `extra` metrics.
/// Undefined metric values are excluded per text. Test failures are recorded
/// on the metric instead of aborting the report.
inline ComparisonReport compare_groups(const std::vector<stylometry::FeatureVector>& human,
                                       const std::vector<stylometry::FeatureVector>& ai, double alpha = 0.05,
                                       const std::map<std::string, GroupSamples>& extra = {},
                                       SignificanceBasis basis = SignificanceBasis::mann_whitney) {
  if (human.empty() || ai.empty()) throw Error(ErrorKind::EmptySample, "both groups must be nonempty");
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::InvalidConfig, "alpha must lie in (0, 1)");

  std::map<std::string, GroupSamples> all = extra;
  for (std::string_view name : stylometry::kMetricNames) {
    GroupSamples g;
    for (const auto& f : human) {
      if (auto v = stylometry::metric(f, name)) g.human.push_back(*v);
    }
    for (const auto& f : ai) {
      if (auto v = stylometry::metric(f, name)) g.ai.push_back(*v);
    }
    all[std::string(name)] = std::move(g);
  }

  ComparisonReport report;
  report.alpha = alpha;
  report.basis = basis;
  for (const auto& [name, samples] : all) report.metrics.push_back(compare_metric(name, samples, alpha, basis));
  return report;
}

}  // namespace urdet::stats
