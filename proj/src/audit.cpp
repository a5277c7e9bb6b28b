#include "serpaudit/audit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

namespace serpaudit {

namespace {

std::string cell_slug(Cell c) {
  return std::string(to_string(c.engine)) + "_" + std::string(to_string(c.location));
}

// Per-cell values needed to build test samples, keyed by topic id.
struct CellSamples {
  std::map<std::string, MetricArray> performance;
  std::map<std::string, MetricArray> beta;
};

struct Sample {
  std::vector<double> xs;
  std::vector<double> ys;
  std::size_t unmatched_a = 0;
  std::size_t unmatched_b = 0;
};

double sample_value(TestKind kind, const CellSamples& s, const std::string& topic, Metric m) {
  const std::size_t i = index_of(m);
  switch (kind) {
    case TestKind::existence_mb:
    case TestKind::paired_mb: return s.beta.at(topic)[i];
    case TestKind::existence_mab:
    case TestKind::paired_mab: return std::abs(s.beta.at(topic)[i]);
    case TestKind::performance_paired: return s.performance.at(topic)[i];
  }
  return 0.0;
}

Sample build_sample(const PlanEntry& e, const std::map<Cell, CellSamples>& cells) {
  Sample out;
  const CellSamples& a = cells.at(e.cell_a);
  if (!is_paired(e.kind)) {
    for (const auto& [topic, unused] : a.beta) out.xs.push_back(sample_value(e.kind, a, topic, e.metric));
    return out;
  }
  const CellSamples& b = cells.at(*e.cell_b);
  for (const auto& [topic, unused] : a.beta) {
    if (!b.beta.contains(topic)) {
      ++out.unmatched_a;
      continue;
    }
    out.xs.push_back(sample_value(e.kind, a, topic, e.metric));
    out.ys.push_back(sample_value(e.kind, b, topic, e.metric));
  }
  out.unmatched_b = b.beta.size() - out.xs.size();
  return out;
}

}  // namespace

std::string_view to_string(TestKind k) {
  switch (k) {
    case TestKind::existence_mb: return "existence_mb";
    case TestKind::existence_mab: return "existence_mab";
    case TestKind::paired_mb: return "paired_mb";
    case TestKind::paired_mab: return "paired_mab";
    case TestKind::performance_paired: return "performance_paired";
  }
  return "?";
}

std::optional<TestKind> parse_test_kind(std::string_view s) {
  for (TestKind k : {TestKind::existence_mb, TestKind::existence_mab, TestKind::paired_mb,
                     TestKind::paired_mab, TestKind::performance_paired}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

bool is_paired(TestKind k) {
  return k == TestKind::paired_mb || k == TestKind::paired_mab ||
         k == TestKind::performance_paired;
}

std::string make_entry_id(TestKind kind, Cell a, std::optional<Cell> b, Metric metric) {
  std::string id(to_string(kind));
  id += '/';
  id += cell_slug(a);
  if (b) {
    id += '~';
    id += cell_slug(*b);
  }
  id += '/';
  id += metric_slug(metric);
  return id;
}

int TestPlan::bias_test_count() const {
  return static_cast<int>(std::count_if(entries.begin(), entries.end(), [](const PlanEntry& e) {
    return e.kind != TestKind::performance_paired;
  }));
}

int TestPlan::family_size() const {
  return m_override ? *m_override : std::max(1, bias_test_count());
}

CorrectionPlan TestPlan::correction() const { return bonferroni(alpha, family_size()); }

void TestPlan::validate() const {
  if (entries.empty()) throw ValidationError("empty plan");
  if (m_override && *m_override < 1) throw ValidationError("m override must be >= 1");
  std::set<std::string_view> ids;
  std::set<std::tuple<TestKind, Cell, std::optional<Cell>, Metric>> tests;
  for (const auto& e : entries) {
    if (e.id.empty()) throw ValidationError("plan entry with empty id");
    if (!ids.insert(e.id).second) throw ValidationError("duplicate plan entry id '" + e.id + "'");
    if (!tests.emplace(e.kind, e.cell_a, e.cell_b, e.metric).second) {
      throw ValidationError("plan entry '" + e.id + "' repeats an earlier test");
    }
    if (is_paired(e.kind) != e.cell_b.has_value()) {
      throw ValidationError("plan entry '" + e.id + "': " +
                            (is_paired(e.kind) ? "paired test needs two cells"
                                               : "existence test takes one cell"));
    }
  }
  bonferroni(alpha, family_size());  // validates alpha
}

TestPlan default_plan(const Dataset& d, double alpha, const PlanOptions& options) {
  std::vector<Cell> grid;
  std::string missing;
  for (Engine e : kEngines) {
    for (Location l : kLocations) {
      const Cell c{e, l};
      grid.push_back(c);
      if (!d.has_cell(c)) {
        if (!missing.empty()) missing += ',';
        missing += to_string(c);
      }
    }
  }
  if (!missing.empty()) throw ValidationError("missing cells: " + missing);

  TestPlan plan;
  plan.alpha = alpha;
  plan.m_override = options.m_override;
  auto add = [&](TestKind kind, Cell a, std::optional<Cell> b, Metric m) {
    plan.entries.push_back({make_entry_id(kind, a, b, m), kind, a, b, m});
  };

  for (Cell c : grid) {
    for (Metric m : kMetrics) add(TestKind::existence_mb, c, std::nullopt, m);
    if (options.include_mab_existence) {
      for (Metric m : kMetrics) add(TestKind::existence_mab, c, std::nullopt, m);
    }
  }

  std::vector<std::pair<Cell, Cell>> comparisons;
  for (Location l : kLocations) comparisons.push_back({{Engine::engine1, l}, {Engine::engine2, l}});
  for (Engine e : kEngines) comparisons.push_back({{e, Location::UK}, {e, Location::US}});

  for (const auto& [a, b] : comparisons) {
    for (TestKind kind : {TestKind::paired_mb, TestKind::paired_mab}) {
      for (Metric m : kMetrics) add(kind, a, b, m);
    }
  }
  for (const auto& [a, b] : comparisons) {
    for (Metric m : kMetrics) add(TestKind::performance_paired, a, b, m);
  }
  return plan;
}

const CellReport* AuditReport::find_cell(Cell c) const {
  auto it = std::find_if(cells.begin(), cells.end(), [&](const CellReport& r) { return r.cell == c; });
  return it == cells.end() ? nullptr : &*it;
}

const TestOutcome* AuditReport::find_test(std::string_view id) const {
  auto it = std::find_if(tests.begin(), tests.end(),
                         [&](const TestOutcome& t) { return t.entry.id == id; });
  return it == tests.end() ? nullptr : &*it;
}

AuditReport run_audit(const Dataset& d, const LabelBook& labels, const TestPlan& plan,
                      const MetricConfig& cfg, const AuditOptions& options) {
  plan.validate();
  cfg.validate();
  const CorrectionPlan correction = plan.correction();

  AuditReport report;
  report.alpha = correction.alpha;
  report.m = correction.m;
  report.adjusted_alpha = correction.adjusted_alpha;
  report.fwer_uncorrected = correction.fwer_uncorrected;
  report.metric_config = cfg;

  std::map<Cell, CellSamples> samples;
  for (Cell cell : d.cells()) {
    const LabelSet& cell_labels = labels_for(labels, cell.location);
    CellSamples& s = samples[cell];
    for (const auto& serp : d.serps()) {
      if (serp.cell() != cell) continue;
      const GainVector rel = relevance_gains(serp, cell_labels);
      auto& perf = s.performance[serp.topic_id];
      for (Metric m : kMetrics) perf[index_of(m)] = score(m, rel, cfg);
    }

    CellReport cr;
    cr.cell = cell;
    cr.performance = mean_scores(d, labels, cell, cfg);
    for (Metric m : kMetrics) {
      auto per_query = cell_bias(d, labels, cell, m, cfg);
      for (const auto& q : per_query) s.beta[q.topic_id][index_of(m)] = q.beta;
      cr.bias.push_back(summarize_bias(cell, m, std::move(per_query)));
    }
    cr.n_queries = cr.bias.front().n_queries;
    report.cells.push_back(std::move(cr));
  }

  for (const auto& e : plan.entries) {
    for (const auto& c : {std::optional<Cell>(e.cell_a), e.cell_b}) {
      if (c && !samples.contains(*c)) {
        throw ValidationError("plan entry '" + e.id + "' names cell " + to_string(*c) +
                              " which has no SERPs");
      }
    }
    TestOutcome out;
    out.entry = e;
    out.in_family = e.kind != TestKind::performance_paired;
    Sample sample = build_sample(e, samples);
    out.unmatched_a = sample.unmatched_a;
    out.unmatched_b = sample.unmatched_b;
    try {
      if (is_paired(e.kind)) {
        if (sample.xs.empty()) throw ValidationError("no matched topics");
        out.result = paired_ttest(sample.xs, sample.ys);
      } else {
        out.result = one_sample_ttest(sample.xs, 0.0);
      }
      out.verdict = verdict(out.result->p_value, correction);
    } catch (const DegenerateSampleError&) {
      out.untestable = "zero variance";
    } catch (const ValidationError&) {
      out.untestable = sample.xs.empty() ? "no matched topics" : "too few queries";
    }
    if (options.diagnostics) {
      std::vector<double> values = sample.xs;
      if (is_paired(e.kind)) {
        for (std::size_t i = 0; i < values.size(); ++i) values[i] -= sample.ys[i];
      }
      out.moments = sample_moments(values);
    }
    report.tests.push_back(std::move(out));
  }

  DataQuality& dq = report.data_quality;
  dq.topics = d.topics().size();
  dq.cells = d.completeness();
  dq.warnings = options.warnings;
  for (Location loc : kLocations) {
    LabelCoverage cov;
    cov.location = loc;
    const LabelSet& loc_labels = labels_for(labels, loc);
    bool any = false;
    for (const auto& serp : d.serps()) {
      if (serp.location != loc) continue;
      any = true;
      for (const auto& r : serp.results) {
        ++cov.results;
        if (const AggregatedLabel* l = loc_labels.find(r.doc_id)) {
          ++cov.labelled;
          ++cov.stance_counts[static_cast<std::size_t>(l->stance)];
        } else {
          ++cov.missing;
        }
      }
    }
    if (any) dq.labels.push_back(cov);
  }
  return report;
}

}  // namespace serpaudit
