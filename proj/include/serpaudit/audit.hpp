#pragma once

// Declarative test plans over the engine x location grid and the audit run
// that executes them.
//
// A plan is a list of entries, each one t-test:
//   existence_mb   one-sample test of the cell's per-query beta against 0
//   existence_mab  one-sample test of |beta| against 0 (opt-in)
//   paired_mb      paired test of beta between two cells over matched topics
//   paired_mab     paired test of |beta| between two cells
//   performance_paired  paired test of relevance-gain metric scores
// Every entry except performance_paired belongs to the Bonferroni family.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "serpaudit/annotations.hpp"
#include "serpaudit/bias.hpp"
#include "serpaudit/corpus.hpp"
#include "serpaudit/metrics.hpp"
#include "serpaudit/stats.hpp"

namespace serpaudit {

enum class TestKind { existence_mb, existence_mab, paired_mb, paired_mab, performance_paired };

std::string_view to_string(TestKind k);
std::optional<TestKind> parse_test_kind(std::string_view s);
bool is_paired(TestKind k);

struct PlanEntry {
  std::string id;
  TestKind kind = TestKind::existence_mb;
  Cell cell_a;
  std::optional<Cell> cell_b;  // set exactly for paired kinds
  Metric metric = Metric::precision;

  bool operator==(const PlanEntry&) const = default;
};

// "paired_mb/engine1_UK~engine2_UK/dcg"
std::string make_entry_id(TestKind kind, Cell a, std::optional<Cell> b, Metric metric);

struct TestPlan {
  std::vector<PlanEntry> entries;
  double alpha = 0.05;
  std::optional<int> m_override;

  // Entries that belong to the Bonferroni family.
  int bias_test_count() const;
  // m used for the correction: the override when set, else bias_test_count().
  int family_size() const;
  CorrectionPlan correction() const;
  // Throws ValidationError on an empty plan, duplicate ids or a cell_b that
  // does not match the entry kind.
  void validate() const;
};

struct PlanOptions {
  bool include_mab_existence = false;
  std::optional<int> m_override;
};

// Existence tests per cell and metric, engine-vs-engine comparisons per
// location and location-vs-location comparisons per engine (MB and MAB),
// plus the retrieval-performance comparisons outside the family. On the full
// 2x2 grid this is 36 family tests. Throws ValidationError listing any
// missing grid cells.
TestPlan default_plan(const Dataset& d, double alpha, const PlanOptions& options = {});

struct CellReport {
  Cell cell;
  std::size_t n_queries = 0;
  MetricArray performance{};       // mean relevance scores
  std::vector<BiasSummary> bias;   // one per metric, in kMetrics order

  const BiasSummary& bias_for(Metric m) const { return bias[index_of(m)]; }
  bool operator==(const CellReport&) const = default;
};

struct TestOutcome {
  PlanEntry entry;
  bool in_family = false;
  std::optional<TestResult> result;  // empty when untestable
  std::string untestable;            // reason, e.g. "zero variance"
  Verdict verdict;
  // Queries of each paired cell that had no partner in the other cell.
  std::size_t unmatched_a = 0;
  std::size_t unmatched_b = 0;
  std::optional<SampleMoments> moments;  // only with AuditOptions::diagnostics

  bool operator==(const TestOutcome&) const = default;
};

inline constexpr std::size_t kStanceCount = 5;

struct LabelCoverage {
  Location location = Location::UK;
  std::size_t results = 0;    // SERP result slots in this location
  std::size_t labelled = 0;
  std::size_t missing = 0;
  std::array<std::size_t, kStanceCount> stance_counts{};  // indexed by Stance

  std::size_t unresolved() const { return stance_counts[static_cast<std::size_t>(Stance::unresolved)]; }
  double missing_fraction() const {
    return results == 0 ? 0.0 : static_cast<double>(missing) / static_cast<double>(results);
  }
  bool operator==(const LabelCoverage&) const = default;
};

struct DataQuality {
  std::size_t topics = 0;
  std::vector<CellCompleteness> cells;
  std::vector<LabelCoverage> labels;
  std::vector<std::string> warnings;

  bool operator==(const DataQuality&) const = default;
};

struct AuditReport {
  double alpha = 0.05;
  int m = 1;
  double adjusted_alpha = 0.05;
  double fwer_uncorrected = 0.05;
  MetricConfig metric_config;
  std::vector<CellReport> cells;    // dataset cells in (engine, location) order
  std::vector<TestOutcome> tests;   // plan order
  DataQuality data_quality;

  const CellReport* find_cell(Cell c) const;
  const TestOutcome* find_test(std::string_view id) const;
  bool operator==(const AuditReport&) const = default;
};

struct AuditOptions {
  bool diagnostics = false;  // attach skewness / kurtosis of every tested sample
  std::vector<std::string> warnings;  // carried into data_quality (e.g. aggregation warnings)
};

// Runs every plan entry. Zero-variance or too-small samples become
// "untestable" outcomes instead of errors. Throws ValidationError for an
// empty or invalid plan, or a plan entry naming a cell absent from the data.
AuditReport run_audit(const Dataset& d, const LabelBook& labels, const TestPlan& plan,
                      const MetricConfig& cfg, const AuditOptions& options = {});

}  // namespace serpaudit
