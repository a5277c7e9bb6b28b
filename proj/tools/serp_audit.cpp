// serp-audit: command line front end.
//
//   serp-audit validate  --data DIR [--judgments UK=FILE ...]
//   serp-audit agreement FILE...
//   serp-audit audit     --config FILE [--out DIR] [--alpha A] [--rbp-persistence P]
//   serp-audit render    --summary FILE --out DIR

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "serpaudit/annotations.hpp"
#include "serpaudit/audit.hpp"
#include "serpaudit/config.hpp"
#include "serpaudit/corpus.hpp"
#include "serpaudit/report.hpp"

namespace {

using namespace serpaudit;

std::map<Location, std::filesystem::path> parse_judgment_args(
    const std::vector<std::string>& args) {
  std::map<Location, std::filesystem::path> out;
  for (const auto& a : args) {
    const auto eq = a.find('=');
    auto loc = eq == std::string::npos ? std::nullopt : parse_location(a.substr(0, eq));
    if (!loc) throw Error("--judgments expects LOCATION=FILE (UK or US), got '" + a + "'");
    out[*loc] = a.substr(eq + 1);
  }
  return out;
}

int cmd_validate(const std::filesystem::path& data, const std::vector<std::string>& judgment_args) {
  const Dataset d = load_dataset(data);
  std::cout << "ok: " << d.summary() << '\n';
  for (const auto& c : d.completeness()) {
    std::cout << "  " << to_string(c.cell) << ": " << c.serps << " SERPs, " << c.short_serps
              << " short, " << c.missing_topics << " topics missing\n";
  }
  const auto loaded = load_labels(parse_judgment_args(judgment_args));
  for (const auto& w : loaded.warnings) std::cout << "warning: " << w << '\n';
  for (const auto& [loc, labels] : loaded.labels) {
    std::size_t results = 0, missing = 0;
    for (const auto& s : d.serps()) {
      if (s.location != loc) continue;
      for (const auto& r : s.results) {
        ++results;
        if (!labels.find(r.doc_id)) ++missing;
      }
    }
    std::cout << "  labels " << to_string(loc) << ": " << labels.size() << " documents, "
              << missing << " of " << results << " SERP results unlabelled\n";
  }
  return 0;
}

int cmd_agreement(const std::vector<std::string>& files) {
  for (const auto& f : files) {
    const auto judgments = load_judgments(f);
    const AgreementReport r = fleiss_kappa(judgments);
    std::cout << f << ": kappa " << format_fixed4(r.kappa) << " (exact " << format_exact(r.kappa)
              << "), " << r.n_items << " items, " << r.n_raters_per_item << " raters per item";
    if (!r.excluded_items.empty()) std::cout << ", " << r.excluded_items.size() << " excluded";
    std::cout << '\n';
    for (std::size_t k = 0; k < kJudgedStances; ++k) {
      std::cout << "  " << to_string(kJudgedStanceValues[k]) << ": "
                << format_fixed4(r.category_proportions[k]) << '\n';
    }
  }
  return 0;
}

int cmd_audit(AuditConfig cfg, const std::optional<std::string>& out,
              std::optional<double> alpha, std::optional<double> persistence,
              const std::optional<std::string>& p_style) {
  if (out) cfg.output_dir = *out;
  if (alpha) cfg.alpha = *alpha;
  if (persistence) cfg.metrics.rbp_persistence = *persistence;
  if (p_style) cfg.render.p_value_style = *parse_p_value_style(*p_style);
  cfg.metrics.validate();

  const AuditReport report = run_configured_audit(cfg);
  write_report(report, cfg.render, cfg.output_dir);

  std::size_t family = 0, corrected = 0, untestable = 0;
  for (const auto& t : report.tests) {
    family += t.in_family;
    corrected += t.in_family && t.verdict.corrected_significant;
    untestable += !t.result;
  }
  std::cout << "audit: " << report.tests.size() << " tests (" << family
            << " in the Bonferroni family, m = " << report.m << ", adjusted alpha "
            << format_exact(report.adjusted_alpha) << "), " << corrected
            << " significant after correction, " << untestable << " untestable\n";
  std::cout << "wrote " << cfg.output_dir.string() << '\n';
  return 0;
}

int cmd_render(const std::filesystem::path& summary, const std::filesystem::path& out,
               const std::optional<std::string>& p_style) {
  std::ifstream in(summary, std::ios::binary);
  if (!in) throw Error("cannot open " + summary.string());
  std::ostringstream text;
  text << in.rdbuf();
  const AuditReport report = parse_summary(text.str());
  RenderOptions options;
  if (p_style) options.p_value_style = *parse_p_value_style(*p_style);
  write_report(report, options, out);
  std::cout << "wrote " << out.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Audit ideological bias in search engine result pages"};
  app.require_subcommand(1);

  auto* validate = app.add_subcommand("validate", "Load a dataset and check its invariants");
  std::string data_dir;
  std::vector<std::string> judgment_args;
  validate->add_option("--data", data_dir, "Dataset directory (topics.tsv, serps.tsv)")
      ->required();
  validate->add_option("--judgments", judgment_args, "LOCATION=FILE judgment files");

  auto* agreement = app.add_subcommand("agreement", "Fleiss' kappa per judgment file");
  std::vector<std::string> agreement_files;
  agreement->add_option("files", agreement_files, "Judgment files")->required();

  const std::vector<std::string> styles = {"raw", "threshold"};

  auto* audit = app.add_subcommand("audit", "Run the full audit and write tables and figures");
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<double> alpha;
  std::optional<double> persistence;
  std::optional<std::string> p_style;
  audit->add_option("--config", config_path, "Audit config file (JSON)")->required();
  audit->add_option("--out", out_dir, "Output directory (overrides config)");
  audit->add_option("--alpha", alpha, "Significance level (overrides config)");
  audit->add_option("--rbp-persistence", persistence, "RBP persistence (overrides config)");
  audit->add_option("--p-style", p_style, "p-value display: raw or threshold")
      ->check(CLI::IsMember(styles));

  auto* render = app.add_subcommand("render", "Re-render tables and figures from summary.json");
  std::string summary_path;
  std::string render_out;
  std::optional<std::string> render_style;
  render->add_option("--summary", summary_path, "summary.json written by `audit`")->required();
  render->add_option("--out", render_out, "Output directory")->required();
  render->add_option("--p-style", render_style, "p-value display: raw or threshold")
      ->check(CLI::IsMember(styles));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return cmd_validate(data_dir, judgment_args);
    if (*agreement) return cmd_agreement(agreement_files);
    if (*audit) return cmd_audit(load_config(config_path), out_dir, alpha, persistence, p_style);
    if (*render) return cmd_render(summary_path, render_out, render_style);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
