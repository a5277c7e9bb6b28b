#include "serpaudit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace serpaudit {

namespace {

constexpr double kCfTolerance = 1e-12;
constexpr int kCfMaxIterations = 300;
constexpr double kTiny = 1e-300;

// Relative spread below which a sample counts as constant.
constexpr double kDegenerateSpread = 1e-12;

// Continued fraction for I_x(a, b), modified Lentz.
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kCfMaxIterations; ++m) {
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
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kCfTolerance) return h;
  }
  throw Error("incomplete beta continued fraction did not converge");
}

}  // namespace

std::string_view to_string(TTestKind k) {
  return k == TTestKind::one_sample ? "one_sample" : "paired";
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw ValidationError("incomplete beta needs a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("incomplete beta needs x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  // The fraction converges fast only below the mean; use the symmetry
  // I_x(a, b) = 1 - I_{1-x}(b, a) above it.
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double t_two_tailed_p(double t, int df) {
  if (df < 1) throw ValidationError("t distribution needs df >= 1");
  if (std::isnan(t)) throw ValidationError("t statistic is NaN");
  if (t == 0.0) return 1.0;
  if (std::isinf(t)) return 0.0;
  const double nu = df;
  const double x = nu / (nu + t * t);
  return std::clamp(regularized_incomplete_beta(nu / 2.0, 0.5, x), 0.0, 1.0);
}

TestResult one_sample_ttest(std::span<const double> xs, double mu0) {
  if (xs.size() < 2) {
    throw ValidationError("t-test needs at least 2 observations, got " +
                          std::to_string(xs.size()));
  }
  const auto n = static_cast<double>(xs.size());
  double sum = 0.0;
  double scale = 0.0;
  for (double x : xs) {
    sum += x;
    scale = std::max(scale, std::abs(x - mu0));
  }
  const double mean = sum / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  if (!(sd > kDegenerateSpread * scale)) throw DegenerateSampleError();

  TestResult r;
  r.kind = TTestKind::one_sample;
  r.n = static_cast<int>(xs.size());
  r.df = r.n - 1;
  r.mean_effect = mean - mu0;
  r.t_stat = r.mean_effect / (sd / std::sqrt(n));
  r.p_value = t_two_tailed_p(r.t_stat, r.df);
  return r;
}

TestResult paired_ttest(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw ValidationError("paired t-test length mismatch: " + std::to_string(xs.size()) +
                          " vs " + std::to_string(ys.size()));
  }
  std::vector<double> diffs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) diffs[i] = xs[i] - ys[i];
  TestResult r = one_sample_ttest(diffs, 0.0);
  r.kind = TTestKind::paired;
  return r;
}

CorrectionPlan bonferroni(double alpha, int m) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
  if (m < 1) throw ValidationError("hypothesis count must be >= 1");
  CorrectionPlan plan;
  plan.alpha = alpha;
  plan.m = m;
  plan.adjusted_alpha = alpha / m;
  plan.fwer_uncorrected = 1.0 - std::pow(1.0 - alpha, m);
  return plan;
}

Verdict verdict(double p, const CorrectionPlan& plan) {
  return {p <= plan.alpha, p <= plan.adjusted_alpha};
}

std::optional<SampleMoments> sample_moments(std::span<const double> xs) {
  if (xs.size() < 2) return std::nullopt;
  const auto n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : xs) {
    const double d = x - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (!(m2 > 0.0)) return std::nullopt;
  return SampleMoments{m3 / std::pow(m2, 1.5), m4 / (m2 * m2) - 3.0};
}

}  // namespace serpaudit
