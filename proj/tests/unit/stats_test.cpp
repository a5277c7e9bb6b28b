#include "serpaudit/stats.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "t_density_oracle.hpp"

namespace serpaudit {
namespace {

TEST(IncompleteBetaTest, ClosedForms) {
  for (double x : {0.0, 0.1, 0.37, 0.5, 0.9, 1.0}) {
    EXPECT_NEAR(regularized_incomplete_beta(1.0, 1.0, x), x, 1e-14);
    EXPECT_NEAR(regularized_incomplete_beta(3.0, 1.0, x), x * x * x, 1e-13);
    EXPECT_NEAR(regularized_incomplete_beta(1.0, 2.0, x), 1.0 - (1 - x) * (1 - x), 1e-13);
  }
  for (double a : {0.5, 2.0, 7.5, 30.0}) {
    EXPECT_NEAR(regularized_incomplete_beta(a, a, 0.5), 0.5, 1e-12);
  }
}

TEST(IncompleteBetaTest, RejectsBadArguments) {
  EXPECT_THROW(regularized_incomplete_beta(0.0, 1.0, 0.5), ValidationError);
  EXPECT_THROW(regularized_incomplete_beta(1.0, 1.0, 1.5), ValidationError);
}

TEST(TTwoTailedPTest, ZeroStatisticIsOne) {
  for (int df : {1, 2, 5, 100}) EXPECT_EQ(t_two_tailed_p(0.0, df), 1.0);
}

TEST(TTwoTailedPTest, CriticalValues) {
  EXPECT_NEAR(t_two_tailed_p(2.776, 4), 0.050, 0.001);
  EXPECT_NEAR(t_two_tailed_p(12.706, 1), 0.050, 0.001);
  // Two-sided 99% critical values, standard tables.
  EXPECT_NEAR(t_two_tailed_p(3.169, 10), 0.010, 0.0005);
  EXPECT_NEAR(t_two_tailed_p(2.660, 60), 0.010, 0.0005);
}

TEST(TTwoTailedPTest, MatchesClosedFormsForOneAndTwoDf) {
  for (double t = -15.0; t <= 15.0; t += 0.37) {
    // df = 1 is Cauchy; df = 2 has F(t) = (1 + t / sqrt(2 + t^2)) / 2.
    EXPECT_NEAR(t_two_tailed_p(t, 1), 1.0 - 2.0 / std::numbers::pi * std::atan(std::abs(t)), 1e-12);
    EXPECT_NEAR(t_two_tailed_p(t, 2), 1.0 - std::abs(t) / std::sqrt(2.0 + t * t), 1e-12);
  }
}

TEST(TTwoTailedPTest, MatchesQuadratureOracle) {
  for (int df : {1, 2, 3, 7, 15, 29, 60}) {
    for (double t = -10.0; t <= 10.0; t += 0.5) {
      EXPECT_NEAR(t_two_tailed_p(t, df), oracle::t_two_tailed_p_quadrature(t, df), 1e-6)
          << "t=" << t << " df=" << df;
    }
  }
}

TEST(TTwoTailedPTest, SymmetricAndMonotoneInAbsT) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> t_dist(0.0, 12.0);
  std::uniform_int_distribution<int> df_dist(1, 200);
  for (int i = 0; i < 2000; ++i) {
    const int df = df_dist(rng);
    double a = t_dist(rng), b = t_dist(rng);
    if (a > b) std::swap(a, b);
    EXPECT_EQ(t_two_tailed_p(a, df), t_two_tailed_p(-a, df));
    EXPECT_GE(t_two_tailed_p(a, df), t_two_tailed_p(b, df));
  }
}

TEST(TTwoTailedPTest, RejectsZeroDf) { EXPECT_THROW(t_two_tailed_p(1.0, 0), ValidationError); }

TEST(OneSampleTTest, OneTwoThree) {
  const std::vector<double> xs = {1, 2, 3};
  const TestResult r = one_sample_ttest(xs, 0.0);
  EXPECT_EQ(r.kind, TTestKind::one_sample);
  EXPECT_NEAR(r.t_stat, 3.4641016151377544, 1e-12);
  EXPECT_EQ(r.df, 2);
  EXPECT_EQ(r.n, 3);
  EXPECT_NEAR(r.p_value, 0.07417990022744853, 1e-10);
  EXPECT_NEAR(r.p_value, 0.07418, 5e-6);
  EXPECT_DOUBLE_EQ(r.mean_effect, 2.0);
}

TEST(OneSampleTTest, SymmetricSampleHasZeroEffect) {
  const std::vector<double> xs = {-1, 1};
  const TestResult r = one_sample_ttest(xs, 0.0);
  EXPECT_EQ(r.t_stat, 0.0);
  EXPECT_EQ(r.p_value, 1.0);
}

TEST(OneSampleTTest, DegenerateAndTooSmall) {
  const std::vector<double> constant = {5, 5, 5};
  EXPECT_THROW(one_sample_ttest(constant, 0.0), DegenerateSampleError);
  const std::vector<double> one = {1.0};
  EXPECT_THROW(one_sample_ttest(one, 0.0), ValidationError);
  EXPECT_THROW(one_sample_ttest({}, 0.0), ValidationError);
}

TEST(OneSampleTTest, ScaleInvariant) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> noise(0.3, 1.0);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int i = 0; i < 500; ++i) {
    std::vector<double> xs(5 + i % 20);
    for (double& x : xs) x = noise(rng);
    const double mu0 = noise(rng);
    const double c = scale(rng);
    std::vector<double> scaled = xs;
    for (double& x : scaled) x *= c;
    const auto a = one_sample_ttest(xs, mu0);
    const auto b = one_sample_ttest(scaled, mu0 * c);
    EXPECT_NEAR(a.t_stat, b.t_stat, 1e-9 * (1.0 + std::abs(a.t_stat)));
    EXPECT_NEAR(a.p_value, b.p_value, 1e-9);
  }
}

TEST(PairedTTest, ReducesToOneSampleOnDifferences) {
  const std::vector<double> xs = {1, 2, 3};
  const std::vector<double> ys = {0, 0, 0};
  const TestResult paired = paired_ttest(xs, ys);
  const TestResult single = one_sample_ttest(xs, 0.0);
  EXPECT_EQ(paired.kind, TTestKind::paired);
  EXPECT_EQ(paired.t_stat, single.t_stat);
  EXPECT_EQ(paired.p_value, single.p_value);
}

TEST(PairedTTest, SwapNegatesT) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> xs(12), ys(12);
    for (double& x : xs) x = u(rng);
    for (double& y : ys) y = u(rng);
    const auto ab = paired_ttest(xs, ys);
    const auto ba = paired_ttest(ys, xs);
    EXPECT_EQ(ab.t_stat, -ba.t_stat);
    EXPECT_EQ(ab.p_value, ba.p_value);
  }
}

TEST(PairedTTest, Errors) {
  const std::vector<double> xs = {0.1, 0.4, 0.2};
  EXPECT_THROW(paired_ttest(xs, xs), DegenerateSampleError);
  const std::vector<double> shorter = {0.1, 0.4};
  EXPECT_THROW(paired_ttest(xs, shorter), ValidationError);
}

TEST(BonferroniTest, ThirtySixHypotheses) {
  const auto p05 = bonferroni(0.05, 36);
  EXPECT_DOUBLE_EQ(p05.adjusted_alpha, 0.05 / 36);
  EXPECT_NEAR(p05.adjusted_alpha, 0.001389, 5e-7);
  EXPECT_NEAR(p05.fwer_uncorrected, 0.8422, 5e-5);
  EXPECT_NEAR(bonferroni(0.01, 36).adjusted_alpha, 0.000278, 5e-7);
  EXPECT_NEAR(bonferroni(0.001, 36).adjusted_alpha, 0.0000278, 5e-8);
}

TEST(BonferroniTest, SingleHypothesisAndErrors) {
  const auto one = bonferroni(0.05, 1);
  EXPECT_EQ(one.adjusted_alpha, 0.05);
  EXPECT_NEAR(one.fwer_uncorrected, 0.05, 1e-15);
  EXPECT_THROW(bonferroni(0.0, 3), ValidationError);
  EXPECT_THROW(bonferroni(1.0, 3), ValidationError);
  EXPECT_THROW(bonferroni(0.05, 0), ValidationError);
}

TEST(VerdictTest, Examples) {
  const auto plan = bonferroni(0.05, 36);
  EXPECT_EQ(verdict(0.0013, plan), (Verdict{true, true}));
  EXPECT_EQ(verdict(0.0113, plan), (Verdict{true, false}));
  EXPECT_EQ(verdict(0.9, plan), (Verdict{false, false}));
  EXPECT_EQ(verdict(0.9, bonferroni(0.5, 2)), (Verdict{false, false}));
}

TEST(VerdictTest, CorrectedImpliesRaw) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> p(0.0, 1.0);
  std::uniform_real_distribution<double> alpha(1e-4, 0.5);
  std::uniform_int_distribution<int> m(1, 100);
  for (int i = 0; i < 5000; ++i) {
    const auto v = verdict(p(rng), bonferroni(alpha(rng), m(rng)));
    EXPECT_TRUE(!v.corrected_significant || v.raw_significant);
  }
}

TEST(SampleMomentsTest, SymmetricSampleHasNoSkew) {
  const std::vector<double> xs = {-2, -1, 0, 1, 2};
  const auto m = sample_moments(xs);
  ASSERT_TRUE(m.has_value());
  EXPECT_NEAR(m->skewness, 0.0, 1e-15);
  // Discrete uniform on 5 points: m4 / m2^2 = 6.8 / 4 = 1.7.
  EXPECT_NEAR(m->excess_kurtosis, 1.7 - 3.0, 1e-12);
  const std::vector<double> constant = {1, 1, 1};
  EXPECT_FALSE(sample_moments(constant).has_value());
}

}  // namespace
}  // namespace serpaudit
