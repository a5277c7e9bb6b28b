#include "serpaudit/bias.hpp"

#include <cmath>

namespace serpaudit {

GainVector leaning_gains(const SerpRecord& serp, const LabelSet& labels, const Topic& topic,
                         Leaning leaning) {
  std::vector<double> gains;
  gains.reserve(serp.results.size());
  for (const auto& r : serp.results) {
    const AggregatedLabel* label = labels.find(r.doc_id);
    const auto doc_leaning = label ? leaning_of(label->stance, topic) : std::nullopt;
    gains.push_back(doc_leaning == leaning ? 1.0 : 0.0);
  }
  return GainVector(std::move(gains));
}

LeaningScores query_bias(const SerpRecord& serp, const LabelSet& labels, const Topic& topic,
                         Metric metric, const MetricConfig& cfg) {
  LeaningScores s;
  s.topic_id = serp.topic_id;
  s.metric = metric;
  s.conservative = score(metric, leaning_gains(serp, labels, topic, Leaning::conservative), cfg);
  s.liberal = score(metric, leaning_gains(serp, labels, topic, Leaning::liberal), cfg);
  s.beta = s.conservative - s.liberal;
  return s;
}

BiasSummary summarize_bias(Cell cell, Metric metric, std::vector<LeaningScores> per_query) {
  if (per_query.empty()) {
    throw ValidationError("no queries to summarize for " + to_string(cell));
  }
  double sum = 0.0;
  double sum_abs = 0.0;
  for (const auto& q : per_query) {
    sum += q.beta;
    sum_abs += std::abs(q.beta);
  }
  const auto n = static_cast<double>(per_query.size());
  BiasSummary out;
  out.cell = cell;
  out.metric = metric;
  out.mean_bias = sum / n;
  out.mean_absolute_bias = sum_abs / n;
  out.n_queries = per_query.size();
  out.per_query = std::move(per_query);
  return out;
}

std::vector<LeaningScores> cell_bias(const Dataset& d, const LabelBook& labels, Cell cell,
                                     Metric metric, const MetricConfig& cfg) {
  const LabelSet& cell_labels = labels_for(labels, cell.location);
  std::vector<LeaningScores> out;
  for (const auto& serp : d.serps()) {
    if (serp.cell() != cell) continue;
    out.push_back(query_bias(serp, cell_labels, d.topic(serp.topic_id), metric, cfg));
  }
  return out;
}

}  // namespace serpaudit
