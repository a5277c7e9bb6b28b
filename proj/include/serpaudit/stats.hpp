#pragma once

// Student-t significance tests with Bonferroni correction.

#include <optional>
#include <span>
#include <string_view>

#include "serpaudit/types.hpp"

namespace serpaudit {

// Raised for a sample whose spread is zero, where the t statistic is undefined.
class DegenerateSampleError : public Error {
 public:
  DegenerateSampleError() : Error("degenerate sample") {}
};

enum class TTestKind { one_sample, paired };

std::string_view to_string(TTestKind k);

struct TestResult {
  TTestKind kind = TTestKind::one_sample;
  double t_stat = 0.0;
  int df = 0;  // n - 1
  double p_value = 1.0;  // two-tailed
  int n = 0;
  double mean_effect = 0.0;  // mean(xs) - mu0, or mean(xs - ys)

  bool operator==(const TestResult&) const = default;
};

// Regularized incomplete beta I_x(a, b), continued fraction evaluated with the
// modified Lentz method (tolerance 1e-12, at most 300 iterations).
double regularized_incomplete_beta(double a, double b, double x);

// Two-tailed tail probability P(|T| >= |t|) for Student-t with df degrees of freedom.
double t_two_tailed_p(double t, int df);

// Throws ValidationError for n < 2, DegenerateSampleError for zero spread.
TestResult one_sample_ttest(std::span<const double> xs, double mu0);

// One-sample test on xs[i] - ys[i] against 0. Throws ValidationError on a
// length mismatch.
TestResult paired_ttest(std::span<const double> xs, std::span<const double> ys);

struct CorrectionPlan {
  double alpha = 0.05;
  int m = 1;
  double adjusted_alpha = 0.05;    // alpha / m
  double fwer_uncorrected = 0.05;  // 1 - (1 - alpha)^m

  bool operator==(const CorrectionPlan&) const = default;
};

CorrectionPlan bonferroni(double alpha, int m);

struct Verdict {
  bool raw_significant = false;        // p <= alpha
  bool corrected_significant = false;  // p <= alpha / m

  bool operator==(const Verdict&) const = default;
};

Verdict verdict(double p, const CorrectionPlan& plan);

// Sample skewness and excess kurtosis (population moments, no bias correction).
struct SampleMoments {
  double skewness = 0.0;
  double excess_kurtosis = 0.0;

  bool operator==(const SampleMoments&) const = default;
};

std::optional<SampleMoments> sample_moments(std::span<const double> xs);

}  // namespace serpaudit
