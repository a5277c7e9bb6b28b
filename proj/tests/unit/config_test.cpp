#include "serpaudit/config.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "test_util.hpp"

namespace serpaudit {
namespace {

namespace fs = std::filesystem;

TEST(ConfigTest, DefaultsAndRelativePaths) {
  const AuditConfig cfg = parse_config(R"({"dataset": "synthetic"})", "/data");
  EXPECT_EQ(cfg.dataset, fs::path("/data/synthetic"));
  EXPECT_TRUE(cfg.judgments.empty());
  EXPECT_EQ(cfg.alpha, 0.05);
  EXPECT_EQ(cfg.metrics, MetricConfig{});
  EXPECT_FALSE(cfg.plan.include_mab_existence);
  EXPECT_EQ(cfg.render.p_value_style, PValueStyle::raw);
}

TEST(ConfigTest, AllKeys) {
  const AuditConfig cfg = parse_config(R"({
    "dataset": "/abs/data",
    "judgments": {"UK": "uk.tsv", "US": "/x/us.tsv"},
    "output_dir": "out",
    "alpha": 0.01,
    "metrics": {"k": 5, "rbp_persistence": 0.5},
    "plan": {"include_mab_existence": true, "m_override": 40},
    "report": {"p_value_style": "threshold", "diagnostics": true,
               "engine_names": {"engine2": "Other"}}
  })", "base");
  EXPECT_EQ(cfg.dataset, fs::path("/abs/data"));
  EXPECT_EQ(cfg.judgments.at(Location::UK), fs::path("base/uk.tsv"));
  EXPECT_EQ(cfg.judgments.at(Location::US), fs::path("/x/us.tsv"));
  EXPECT_EQ(cfg.output_dir, fs::path("base/out"));
  EXPECT_EQ(cfg.alpha, 0.01);
  EXPECT_EQ(cfg.metrics.k, 5);
  EXPECT_EQ(cfg.metrics.rbp_persistence, 0.5);
  EXPECT_TRUE(cfg.plan.include_mab_existence);
  EXPECT_EQ(cfg.plan.m_override, 40);
  EXPECT_EQ(cfg.render.p_value_style, PValueStyle::threshold);
  EXPECT_TRUE(cfg.diagnostics);
  EXPECT_EQ(cfg.render.engine_name(Engine::engine2), "Other");
  EXPECT_EQ(cfg.render.engine_name(Engine::engine1), "Engine 1");
}

TEST(ConfigTest, Errors) {
  EXPECT_THROW(parse_config("{}", "."), Error);
  EXPECT_THROW(parse_config("not json", "."), Error);
  EXPECT_THROW(parse_config(R"({"dataset": "d", "judgments": {"FR": "x"}})", "."), ValidationError);
  EXPECT_THROW(parse_config(R"({"dataset": "d", "alpha": 1.5})", "."), ValidationError);
  EXPECT_THROW(parse_config(R"({"dataset": "d", "metrics": {"rbp_persistence": 1}})", "."),
               ValidationError);
  EXPECT_THROW(parse_config(R"({"dataset": "d", "report": {"p_value_style": "stars"}})", "."),
               ValidationError);
  EXPECT_THROW(load_config("/nonexistent/audit.json"), Error);
}

TEST(ConfigTest, ShippedSyntheticConfigRunsEndToEnd) {
  const AuditConfig cfg = load_config(SERPAUDIT_DATA_DIR "/synthetic/audit.json");
  const AuditReport r = run_configured_audit(cfg);
  EXPECT_EQ(r.m, 36);
  EXPECT_EQ(r.tests.size(), 48u);
  ASSERT_EQ(r.data_quality.warnings.size(), 1u);
  EXPECT_EQ(r.data_quality.warnings[0].rfind("US: ", 0), 0u);

  const fs::path out = fs::temp_directory_path() / "serpaudit_config_test";
  fs::remove_all(out);
  write_report(r, cfg.render, out);
  EXPECT_TRUE(fs::exists(out / "summary.json"));
  EXPECT_TRUE(fs::exists(out / "tables" / "existence.txt"));
  EXPECT_TRUE(fs::exists(out / "tables" / "data_quality.txt"));
  EXPECT_TRUE(fs::exists(out / "figures" / "leaning_UK_dcg.csv"));
  EXPECT_TRUE(fs::exists(out / "figures" / "beta_US_engine1_vs_engine2_rbp.diagonal.csv"));
  fs::remove_all(out);
}

}  // namespace
}  // namespace serpaudit
