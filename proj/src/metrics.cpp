#include "serpaudit/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace serpaudit {

GainVector::GainVector(std::vector<double> gains) : gains_(std::move(gains)) {
  if (gains_.size() > static_cast<std::size_t>(kMaxRank)) {
    throw ValidationError("gain vector longer than " + std::to_string(kMaxRank));
  }
  for (double g : gains_) {
    if (!(g >= 0.0 && g <= 1.0)) throw ValidationError("gain outside [0, 1]");
  }
}

void MetricConfig::validate() const {
  if (k < 1) throw ValidationError("metric cutoff k must be >= 1");
  if (!(rbp_persistence > 0.0 && rbp_persistence < 1.0)) {
    throw ValidationError("rbp_persistence must lie in (0, 1)");
  }
}

std::string metric_label(Metric m, int k) {
  switch (m) {
    case Metric::precision: return "P@" + std::to_string(k);
    case Metric::rbp: return "RBP";
    case Metric::dcg: return "DCG@" + std::to_string(k);
  }
  return "?";
}

std::string_view metric_slug(Metric m) {
  switch (m) {
    case Metric::precision: return "precision";
    case Metric::rbp: return "rbp";
    case Metric::dcg: return "dcg";
  }
  return "?";
}

std::optional<Metric> parse_metric(std::string_view s) {
  auto lower = std::string(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  auto strip_cutoff = [&](std::string_view prefix) {
    if (!lower.starts_with(prefix)) return false;
    auto rest = std::string_view(lower).substr(prefix.size());
    if (rest.starts_with('@')) rest.remove_prefix(1);
    return std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  for (Metric m : kMetrics) {
    if (lower == metric_slug(m)) return m;
  }
  if (strip_cutoff("dcg")) return Metric::dcg;
  if (strip_cutoff("p")) return Metric::precision;
  return std::nullopt;
}

double precision_at_k(const GainVector& g, const MetricConfig& cfg) {
  const std::size_t depth = std::min<std::size_t>(g.size(), static_cast<std::size_t>(cfg.k));
  double sum = 0.0;
  for (std::size_t r = 1; r <= depth; ++r) sum += g.at_rank(r);
  return sum / cfg.k;
}

double rbp(const GainVector& g, const MetricConfig& cfg) {
  const double p = cfg.rbp_persistence;
  double weight = 1.0;
  double sum = 0.0;
  for (double gain : g.values()) {
    sum += gain * weight;
    weight *= p;
  }
  return (1.0 - p) * sum;
}

double dcg_at_k(const GainVector& g, const MetricConfig& cfg) {
  const std::size_t depth = std::min<std::size_t>(g.size(), static_cast<std::size_t>(cfg.k));
  double sum = 0.0;
  for (std::size_t r = 1; r <= depth; ++r) {
    sum += g.at_rank(r) / std::log2(static_cast<double>(r) + 1.0);
  }
  return sum;
}

double score(Metric m, const GainVector& g, const MetricConfig& cfg) {
  switch (m) {
    case Metric::precision: return precision_at_k(g, cfg);
    case Metric::rbp: return rbp(g, cfg);
    case Metric::dcg: return dcg_at_k(g, cfg);
  }
  return 0.0;
}

double metric_upper_bound(Metric m, const MetricConfig& cfg) {
  return score(m, GainVector(std::vector<double>(kMaxRank, 1.0)), cfg);
}

GainVector relevance_gains(const SerpRecord& serp, const LabelSet& labels) {
  std::vector<double> gains;
  gains.reserve(serp.results.size());
  for (const auto& r : serp.results) {
    const AggregatedLabel* label = labels.find(r.doc_id);
    gains.push_back(label ? relevance_of(*label) : 0.0);
  }
  return GainVector(std::move(gains));
}

MetricArray mean_scores(const Dataset& d, const LabelBook& labels, Cell cell,
                        const MetricConfig& cfg) {
  const LabelSet& cell_labels = labels_for(labels, cell.location);
  MetricArray sums{};
  std::size_t n = 0;
  for (const auto& serp : d.serps()) {
    if (serp.cell() != cell) continue;
    const GainVector g = relevance_gains(serp, cell_labels);
    for (Metric m : kMetrics) sums[index_of(m)] += score(m, g, cfg);
    ++n;
  }
  if (n == 0) throw ValidationError("empty cell " + to_string(cell));
  for (double& s : sums) s /= static_cast<double>(n);
  return sums;
}

}  // namespace serpaudit
