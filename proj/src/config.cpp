#include "serpaudit/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace serpaudit {

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

AuditConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  AuditConfig cfg;
  try {
    const auto j = nlohmann::json::parse(json_text);
    cfg.dataset = resolve(base_dir, j.at("dataset").get<std::string>());
    if (j.contains("judgments")) {
      for (const auto& [loc, path] : j.at("judgments").items()) {
        auto l = parse_location(loc);
        if (!l) throw ValidationError("config: unknown location '" + loc + "' in judgments");
        cfg.judgments[*l] = resolve(base_dir, path.get<std::string>());
      }
    }
    if (j.contains("output_dir")) {
      cfg.output_dir = resolve(base_dir, j.at("output_dir").get<std::string>());
    }
    cfg.alpha = j.value("alpha", cfg.alpha);
    if (j.contains("metrics")) {
      const auto& m = j.at("metrics");
      cfg.metrics.k = m.value("k", cfg.metrics.k);
      cfg.metrics.rbp_persistence = m.value("rbp_persistence", cfg.metrics.rbp_persistence);
    }
    if (j.contains("plan")) {
      const auto& p = j.at("plan");
      cfg.plan.include_mab_existence = p.value("include_mab_existence", false);
      if (p.contains("m_override") && !p.at("m_override").is_null()) {
        cfg.plan.m_override = p.at("m_override").get<int>();
      }
    }
    if (j.contains("report")) {
      const auto& r = j.at("report");
      if (r.contains("p_value_style")) {
        const auto style = r.at("p_value_style").get<std::string>();
        auto parsed = parse_p_value_style(style);
        if (!parsed) throw ValidationError("config: unknown p_value_style '" + style + "'");
        cfg.render.p_value_style = *parsed;
      }
      cfg.diagnostics = r.value("diagnostics", false);
      if (r.contains("engine_names")) {
        for (const auto& [engine, name] : r.at("engine_names").items()) {
          auto e = parse_engine(engine);
          if (!e) throw ValidationError("config: unknown engine '" + engine + "'");
          cfg.render.engine_names[*e] = name.get<std::string>();
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("config: ") + e.what());
  }
  cfg.metrics.validate();
  bonferroni(cfg.alpha, 1);
  return cfg;
}

AuditConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot open " + file.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), file.parent_path());
}

LoadedLabels load_labels(const std::map<Location, std::filesystem::path>& files) {
  LoadedLabels out;
  for (const auto& [loc, path] : files) {
    const auto judgments = load_judgments(path);
    auto agg = aggregate(judgments);
    for (auto& w : agg.warnings) {
      out.warnings.push_back(std::string(to_string(loc)) + ": " + std::move(w));
    }
    out.labels[loc] = LabelSet(std::move(agg.labels));
  }
  return out;
}

AuditReport run_configured_audit(const AuditConfig& config) {
  const Dataset d = load_dataset(config.dataset);
  auto loaded = load_labels(config.judgments);
  const TestPlan plan = default_plan(d, config.alpha, config.plan);
  AuditOptions options;
  options.diagnostics = config.diagnostics;
  options.warnings = std::move(loaded.warnings);
  return run_audit(d, loaded.labels, plan, config.metrics, options);
}

void write_report(const AuditReport& report, const RenderOptions& options,
                  const std::filesystem::path& dir) {
  write_files(render_tables(report, options), dir / "tables");
  for (Metric m : kMetrics) write_files(render_figure_data(report, m), dir / "figures");
  write_files({{"summary.json", render_summary(report)}}, dir);
}

}  // namespace serpaudit
