#pragma once

// Audit configuration file (JSON) and the end-to-end pipeline it drives.
//
//   {
//     "dataset": "synthetic",                  directory with topics.tsv / serps.tsv
//     "judgments": {"UK": "uk.tsv", "US": "us.tsv"},
//     "output_dir": "out",
//     "alpha": 0.05,
//     "metrics": {"k": 10, "rbp_persistence": 0.8},
//     "plan": {"include_mab_existence": false, "m_override": null},
//     "report": {"p_value_style": "raw", "diagnostics": false,
//                "engine_names": {"engine1": "Engine 1", "engine2": "Engine 2"}}
//   }
//
// Only "dataset" is required. Relative paths resolve against the directory
// holding the config file.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "serpaudit/annotations.hpp"
#include "serpaudit/audit.hpp"
#include "serpaudit/metrics.hpp"
#include "serpaudit/report.hpp"

namespace serpaudit {

struct AuditConfig {
  std::filesystem::path dataset;
  std::map<Location, std::filesystem::path> judgments;
  std::filesystem::path output_dir = "audit_out";
  double alpha = 0.05;
  MetricConfig metrics;
  PlanOptions plan;
  RenderOptions render;
  bool diagnostics = false;
};

AuditConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir);
AuditConfig load_config(const std::filesystem::path& file);

struct LoadedLabels {
  LabelBook labels;
  std::vector<std::string> warnings;
};

// Aggregates each location's judgment file by majority vote.
LoadedLabels load_labels(const std::map<Location, std::filesystem::path>& files);

// Loads the data, builds the default plan and runs it.
AuditReport run_configured_audit(const AuditConfig& config);

// Writes tables/, figures/ and summary.json under `dir`.
void write_report(const AuditReport& report, const RenderOptions& options,
                  const std::filesystem::path& dir);

}  // namespace serpaudit
