#pragma once

// Leaning-attributed ranking scores and the per-query bias score
// beta = M_conservative - M_liberal, aggregated into Mean Bias (MB) and
// Mean Absolute Bias (MAB).

#include <cstddef>
#include <string>
#include <vector>

#include "serpaudit/annotations.hpp"
#include "serpaudit/corpus.hpp"
#include "serpaudit/metrics.hpp"

namespace serpaudit {

struct LeaningScores {
  std::string topic_id;
  Metric metric = Metric::precision;
  double conservative = 0.0;  // metric over conservative-leaning gains
  double liberal = 0.0;       // metric over liberal-leaning gains
  double beta = 0.0;          // conservative - liberal; positive = conservative skew

  bool operator==(const LeaningScores&) const = default;
};

struct BiasSummary {
  Cell cell;
  Metric metric = Metric::precision;
  double mean_bias = 0.0;           // MB
  double mean_absolute_bias = 0.0;  // MAB
  std::size_t n_queries = 0;
  std::vector<LeaningScores> per_query;

  bool operator==(const BiasSummary&) const = default;
};

// Gain 1 at every rank whose aggregated stance maps to `leaning` for this
// topic; unlabelled, neutral, not_relevant and unresolved results get 0.
GainVector leaning_gains(const SerpRecord& serp, const LabelSet& labels, const Topic& topic,
                         Leaning leaning);

LeaningScores query_bias(const SerpRecord& serp, const LabelSet& labels, const Topic& topic,
                         Metric metric, const MetricConfig& cfg);

// Throws ValidationError on an empty list.
BiasSummary summarize_bias(Cell cell, Metric metric, std::vector<LeaningScores> per_query);

// query_bias for every SERP of the cell, in topic order.
std::vector<LeaningScores> cell_bias(const Dataset& d, const LabelBook& labels, Cell cell,
                                     Metric metric, const MetricConfig& cfg);

}  // namespace serpaudit
