#pragma once

// Ranking-effectiveness scores over a single SERP for an arbitrary gain
// vector: precision at k, rank-biased precision and DCG at k.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "serpaudit/annotations.hpp"
#include "serpaudit/corpus.hpp"

namespace serpaudit {

// Per-rank gains in [0, 1]; element i is the gain at rank i + 1.
class GainVector {
 public:
  GainVector() = default;
  // Throws ValidationError for more than kMaxRank entries or a gain outside [0, 1].
  explicit GainVector(std::vector<double> gains);

  std::size_t size() const { return gains_.size(); }
  double at_rank(std::size_t rank) const { return gains_[rank - 1]; }
  std::span<const double> values() const { return gains_; }

  bool operator==(const GainVector&) const = default;

 private:
  std::vector<double> gains_;
};

struct MetricConfig {
  int k = 10;
  double rbp_persistence = 0.8;

  // Throws ValidationError unless k >= 1 and 0 < rbp_persistence < 1.
  void validate() const;

  bool operator==(const MetricConfig&) const = default;
};

enum class Metric { precision, rbp, dcg };

inline constexpr std::size_t kMetricCount = 3;
inline constexpr std::array<Metric, kMetricCount> kMetrics = {Metric::precision, Metric::rbp,
                                                             Metric::dcg};

// Values indexed by Metric.
using MetricArray = std::array<double, kMetricCount>;

inline std::size_t index_of(Metric m) { return static_cast<std::size_t>(m); }

// "P@10", "RBP", "DCG@10" (the cutoff follows cfg.k).
std::string metric_label(Metric m, int k = 10);
// Identifier used in test ids, file names and the summary: "precision",
// "rbp", "dcg". Independent of the cutoff.
std::string_view metric_slug(Metric m);
// Accepts slugs and display labels for any cutoff ("P@10", "dcg@5", "RBP").
std::optional<Metric> parse_metric(std::string_view s);

// Missing ranks beyond the SERP length count as gain 0; divides by k, not n.
double precision_at_k(const GainVector& g, const MetricConfig& cfg);
// (1 - p) * sum_i g_i p^(i-1) over all ranks present.
double rbp(const GainVector& g, const MetricConfig& cfg);
// sum_{i <= min(n, k)} g_i / log2(i + 1).
double dcg_at_k(const GainVector& g, const MetricConfig& cfg);

double score(Metric m, const GainVector& g, const MetricConfig& cfg);

// Largest value the metric can take for a SERP of at most kMaxRank results.
double metric_upper_bound(Metric m, const MetricConfig& cfg);

// Relevance gains for a SERP; a result without a label gets gain 0.
GainVector relevance_gains(const SerpRecord& serp, const LabelSet& labels);

// Unweighted mean over the cell's queries of each metric on relevance gains.
// Throws ValidationError for a cell without SERPs.
MetricArray mean_scores(const Dataset& d, const LabelBook& labels, Cell cell,
                        const MetricConfig& cfg);

}  // namespace serpaudit
