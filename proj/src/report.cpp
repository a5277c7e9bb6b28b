#include "serpaudit/report.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace serpaudit {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kSmallestShownP = 0.0001;

std::string fixed(double v, int digits) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  std::string s(buf, end);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string cell_label(Cell c, const RenderOptions& o) {
  return o.engine_name(c.engine) + " (" + std::string(to_string(c.location)) + ")";
}

std::string cell_slug(Cell c) {
  return std::string(to_string(c.engine)) + "_" + std::string(to_string(c.location));
}

// File stem fragment for a compared pair: "UK_engine1_vs_engine2",
// "engine1_UK_vs_US", or the fully qualified form for diagonal pairs.
std::string pair_slug(Cell a, Cell b) {
  if (a.location == b.location) {
    return std::string(to_string(a.location)) + "_" + std::string(to_string(a.engine)) + "_vs_" +
           std::string(to_string(b.engine));
  }
  if (a.engine == b.engine) {
    return std::string(to_string(a.engine)) + "_" + std::string(to_string(a.location)) + "_vs_" +
           std::string(to_string(b.location));
  }
  return cell_slug(a) + "_vs_" + cell_slug(b);
}

using TestKey = std::tuple<TestKind, Cell, std::optional<Cell>, Metric>;

std::map<TestKey, const TestOutcome*> index_tests(const AuditReport& r) {
  std::map<TestKey, const TestOutcome*> out;
  for (const auto& t : r.tests) {
    out.emplace(TestKey{t.entry.kind, t.entry.cell_a, t.entry.cell_b, t.entry.metric}, &t);
  }
  return out;
}

std::string p_cell(const TestOutcome& t, const AuditReport& r, PValueStyle style) {
  if (!t.result) return "n/a (" + t.untestable + ")";
  std::string s = format_p_value(t.result->p_value, r.alpha, style);
  if (t.in_family && t.verdict.corrected_significant) {
    s += " **";
  } else if (t.verdict.raw_significant) {
    s += " *";
  }
  return s;
}

TableRow p_row(const std::string& label, TestKind kind, Cell a, std::optional<Cell> b,
               const std::map<TestKey, const TestOutcome*>& tests, const AuditReport& r,
               const RenderOptions& o) {
  TableRow row{label, {}, {}};
  for (Metric m : kMetrics) {
    auto it = tests.find(TestKey{kind, a, b, m});
    if (it == tests.end()) {
      row.values.push_back("-");
      continue;
    }
    row.values.push_back(p_cell(*it->second, r, o.p_value_style));
    row.test_ids.push_back(it->second->entry.id);
  }
  return row;
}

TableRow value_row(const std::string& label, const MetricArray& values) {
  TableRow row{label, {}, {}};
  for (double v : values) row.values.push_back(format_fixed4(v));
  return row;
}

MetricArray bias_values(const CellReport& c, bool absolute) {
  MetricArray out{};
  for (Metric m : kMetrics) {
    const auto& b = c.bias_for(m);
    out[index_of(m)] = absolute ? b.mean_absolute_bias : b.mean_bias;
  }
  return out;
}

const CellReport& require_cell(const AuditReport& r, Cell c) {
  const CellReport* cell = r.find_cell(c);
  if (!cell) throw ValidationError("report has no cell " + to_string(c));
  return *cell;
}

std::string legend(const AuditReport& r, bool family) {
  std::string s = "* p <= " + format_exact(r.alpha);
  if (family) {
    s += "; ** p <= alpha/m = " + format_exact(r.adjusted_alpha) + " (Bonferroni, m = " +
         std::to_string(r.m) + ")";
  } else {
    s += "; retrieval-performance tests are outside the Bonferroni family";
  }
  return s;
}

void coverage_notes(TableSpec& t, const AuditReport& r, Cell a, Cell b, TestKind kind) {
  for (const auto& test : r.tests) {
    if (test.entry.kind != kind || test.entry.cell_a != a || test.entry.cell_b != b) continue;
    if (test.unmatched_a + test.unmatched_b == 0) continue;
    t.notes.push_back(test.entry.id + ": " + std::to_string(test.unmatched_a) + " + " +
                      std::to_string(test.unmatched_b) +
                      " queries without a partner excluded from the paired test");
  }
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

ordered_json cell_json(Cell c) {
  return {{"engine", to_string(c.engine)}, {"location", to_string(c.location)}};
}

Cell cell_from_json(const nlohmann::json& j) {
  auto e = parse_engine(j.at("engine").get<std::string>());
  auto l = parse_location(j.at("location").get<std::string>());
  if (!e || !l) throw Error("malformed summary: bad cell");
  return {*e, *l};
}

Metric metric_from_json(const nlohmann::json& j) {
  auto m = parse_metric(j.get<std::string>());
  if (!m) throw Error("malformed summary: bad metric");
  return *m;
}

ordered_json metric_array_json(const MetricArray& a) {
  ordered_json j = ordered_json::object();
  for (Metric m : kMetrics) j[std::string(metric_slug(m))] = a[index_of(m)];
  return j;
}

MetricArray metric_array_from_json(const nlohmann::json& j) {
  MetricArray a{};
  for (Metric m : kMetrics) a[index_of(m)] = j.at(std::string(metric_slug(m))).get<double>();
  return a;
}

}  // namespace

std::optional<PValueStyle> parse_p_value_style(std::string_view s) {
  if (s == "raw") return PValueStyle::raw;
  if (s == "threshold") return PValueStyle::threshold;
  return std::nullopt;
}

std::string RenderOptions::engine_name(Engine e) const {
  if (auto it = engine_names.find(e); it != engine_names.end()) return it->second;
  return e == Engine::engine1 ? "Engine 1" : "Engine 2";
}

std::string format_fixed4(double v) { return fixed(v, 4); }

std::string format_exact(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string format_p_value(double p, double alpha, PValueStyle style) {
  if (style == PValueStyle::raw) {
    return p < kSmallestShownP ? "< " + fixed(kSmallestShownP, 4) : format_fixed4(p);
  }
  const std::string a = format_exact(alpha);
  if (p > alpha) return "> " + a;
  if (p < kSmallestShownP && kSmallestShownP < alpha) return "< " + fixed(kSmallestShownP, 4);
  if (p == alpha) return "<= " + a;
  return "< " + a;
}

std::vector<TableSpec> build_tables(const AuditReport& r, const RenderOptions& o) {
  const auto tests = index_tests(r);
  std::vector<std::string> columns = {"", ""};
  for (Metric m : kMetrics) columns.push_back(metric_label(m, r.metric_config.k));

  std::vector<TableSpec> tables;
  std::set<std::tuple<bool, Cell, Cell>> seen;
  for (const auto& t : r.tests) {
    if (!t.entry.cell_b) continue;
    const Cell a = t.entry.cell_a;
    const Cell b = *t.entry.cell_b;
    const bool performance = t.entry.kind == TestKind::performance_paired;
    if (!seen.emplace(performance, a, b).second) continue;

    const CellReport& ca = require_cell(r, a);
    const CellReport& cb = require_cell(r, b);
    TableSpec spec;
    spec.columns = columns;
    if (performance) {
      spec.name = "performance_" + pair_slug(a, b);
      spec.title = "Retrieval performance of " + cell_label(a, o) + " and " + cell_label(b, o) +
                   ", p-values of a two-tailed paired t-test";
      RowGroup g;
      g.rows.push_back(value_row(cell_label(a, o), ca.performance));
      g.rows.push_back(value_row(cell_label(b, o), cb.performance));
      g.rows.push_back(p_row("p-value", TestKind::performance_paired, a, b, tests, r, o));
      spec.groups.push_back(std::move(g));
      spec.notes.push_back(legend(r, false));
      coverage_notes(spec, r, a, b, TestKind::performance_paired);
    } else {
      spec.name = "bias_" + pair_slug(a, b);
      spec.title = "Ideological bias of " + cell_label(a, o) + " and " + cell_label(b, o) +
                   ", p-values of a two-tailed paired t-test";
      for (bool absolute : {false, true}) {
        RowGroup g;
        g.label = absolute ? "MAB" : "MB";
        g.rows.push_back(value_row(cell_label(a, o), bias_values(ca, absolute)));
        g.rows.push_back(value_row(cell_label(b, o), bias_values(cb, absolute)));
        g.rows.push_back(p_row("p-value", absolute ? TestKind::paired_mab : TestKind::paired_mb,
                               a, b, tests, r, o));
        spec.groups.push_back(std::move(g));
      }
      spec.notes.push_back(legend(r, true));
      coverage_notes(spec, r, a, b, TestKind::paired_mb);
    }
    tables.push_back(std::move(spec));
  }

  // One-sample tests of whether each cell's mean beta differs from zero.
  TableSpec existence;
  existence.name = "existence";
  existence.title = "Existence of bias per cell, p-values of a one-sample t-test against 0";
  existence.columns = columns;
  for (const auto& cell : r.cells) {
    const bool mb = std::any_of(r.tests.begin(), r.tests.end(), [&](const TestOutcome& t) {
      return t.entry.kind == TestKind::existence_mb && t.entry.cell_a == cell.cell;
    });
    const bool mab = std::any_of(r.tests.begin(), r.tests.end(), [&](const TestOutcome& t) {
      return t.entry.kind == TestKind::existence_mab && t.entry.cell_a == cell.cell;
    });
    if (!mb && !mab) continue;
    RowGroup g;
    g.label = cell_label(cell.cell, o);
    g.rows.push_back(value_row("MB", bias_values(cell, false)));
    if (mb) {
      g.rows.push_back(
          p_row("p-value (MB)", TestKind::existence_mb, cell.cell, std::nullopt, tests, r, o));
    }
    g.rows.push_back(value_row("MAB", bias_values(cell, true)));
    if (mab) {
      g.rows.push_back(
          p_row("p-value (MAB)", TestKind::existence_mab, cell.cell, std::nullopt, tests, r, o));
    }
    existence.groups.push_back(std::move(g));
  }
  if (!existence.groups.empty()) {
    existence.notes.push_back(legend(r, true));
    tables.push_back(std::move(existence));
  }
  return tables;
}

std::string render_table_text(const TableSpec& t) {
  std::vector<std::vector<std::string>> grid;
  grid.push_back(t.columns);
  std::vector<std::size_t> group_ends;
  for (const auto& g : t.groups) {
    bool first = true;
    for (const auto& row : g.rows) {
      std::vector<std::string> line = {first ? g.label : "", row.label};
      line.insert(line.end(), row.values.begin(), row.values.end());
      grid.push_back(std::move(line));
      first = false;
    }
    group_ends.push_back(grid.size());
  }

  std::vector<std::size_t> widths(t.columns.size(), 0);
  for (const auto& line : grid) {
    for (std::size_t i = 0; i < line.size() && i < widths.size(); ++i) {
      widths[i] = std::max(widths[i], line[i].size());
    }
  }
  std::size_t total = 0;
  for (std::size_t w : widths) total += w + 2;

  std::ostringstream out;
  out << t.title << '\n' << std::string(total, '=') << '\n';
  for (std::size_t r = 0; r < grid.size(); ++r) {
    std::string line;
    for (std::size_t i = 0; i < widths.size(); ++i) {
      const std::string& cell = i < grid[r].size() ? grid[r][i] : std::string();
      // Labels left-aligned, numbers right-aligned.
      if (i < 2) {
        line += cell + std::string(widths[i] - cell.size(), ' ');
      } else {
        line += std::string(widths[i] - cell.size(), ' ') + cell;
      }
      line += "  ";
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
    if (r == 0 || std::find(group_ends.begin(), group_ends.end(), r + 1) != group_ends.end()) {
      out << std::string(total, '-') << '\n';
    }
  }
  for (const auto& n : t.notes) out << n << '\n';
  return out.str();
}

std::string render_table_csv(const TableSpec& t) {
  std::ostringstream out;
  out << "group,row";
  for (std::size_t i = 2; i < t.columns.size(); ++i) out << ',' << csv_field(t.columns[i]);
  out << ",test_ids\n";
  for (const auto& g : t.groups) {
    for (const auto& row : g.rows) {
      out << csv_field(g.label) << ',' << csv_field(row.label);
      for (const auto& v : row.values) out << ',' << csv_field(v);
      std::string ids;
      for (const auto& id : row.test_ids) {
        if (!ids.empty()) ids += ';';
        ids += id;
      }
      out << ',' << csv_field(ids) << '\n';
    }
  }
  return out.str();
}

std::string render_data_quality(const AuditReport& r) {
  const auto& dq = r.data_quality;
  std::ostringstream out;
  out << "Data quality\n============\n";
  out << "topics: " << dq.topics << '\n';
  out << "\nSERP completeness per cell\n";
  for (const auto& c : dq.cells) {
    out << "  " << to_string(c.cell) << ": " << c.serps << " SERPs, " << c.short_serps
        << " with fewer than " << kMaxRank << " results, " << c.missing_topics
        << " topics without a SERP\n";
  }
  out << "\nStance labels per location\n";
  for (const auto& l : dq.labels) {
    out << "  " << to_string(l.location) << ": " << l.results << " results, " << l.labelled
        << " labelled, " << l.missing << " missing (" << fixed(100.0 * l.missing_fraction(), 2)
        << "%), " << l.unresolved() << " unresolved\n";
    out << "    ";
    for (std::size_t s = 0; s < kStanceCount; ++s) {
      if (s) out << ", ";
      out << to_string(static_cast<Stance>(s)) << ' ' << l.stance_counts[s];
    }
    out << '\n';
  }
  std::size_t untestable = 0;
  for (const auto& t : r.tests) untestable += t.result ? 0 : 1;
  out << "\nuntestable tests: " << untestable << " of " << r.tests.size() << '\n';
  for (const auto& t : r.tests) {
    if (!t.result) out << "  " << t.entry.id << ": " << t.untestable << '\n';
  }
  if (!dq.warnings.empty()) {
    out << "\nwarnings\n";
    for (const auto& w : dq.warnings) out << "  " << w << '\n';
  }
  return out.str();
}

FileSet render_tables(const AuditReport& r, const RenderOptions& options) {
  FileSet files;
  for (const auto& t : build_tables(r, options)) {
    files[t.name + ".txt"] = render_table_text(t);
    files[t.name + ".csv"] = render_table_csv(t);
  }
  files["data_quality.txt"] = render_data_quality(r);
  return files;
}

FileSet render_figure_data(const AuditReport& r, Metric metric) {
  constexpr std::string_view kHeader = "x,y,topic_id,series\n";
  const double bound = metric_upper_bound(metric, r.metric_config);
  const std::string slug(metric_slug(metric));
  FileSet files;

  auto diagonal = [](double lo, double hi) {
    return "x,y\n" + format_exact(lo) + ',' + format_exact(lo) + '\n' + format_exact(hi) + ',' +
           format_exact(hi) + '\n';
  };

  for (Location loc : kLocations) {
    const bool present = std::any_of(r.cells.begin(), r.cells.end(),
                                     [&](const CellReport& c) { return c.cell.location == loc; });
    if (!present) continue;
    const std::string stem = "leaning_" + std::string(to_string(loc)) + "_" + slug;
    std::string body(kHeader);
    for (const auto& c : r.cells) {
      if (c.cell.location != loc) continue;
      for (const auto& q : c.bias_for(metric).per_query) {
        body += format_exact(q.conservative) + ',' + format_exact(q.liberal) + ',' +
                csv_field(q.topic_id) + ',' + std::string(to_string(c.cell.engine)) + '\n';
      }
    }
    files[stem + ".csv"] = std::move(body);
    files[stem + ".diagonal.csv"] = diagonal(0.0, bound);
  }

  std::set<std::pair<Cell, Cell>> pairs;
  for (const auto& t : r.tests) {
    if (t.entry.kind != TestKind::paired_mb && t.entry.kind != TestKind::paired_mab) continue;
    const Cell a = t.entry.cell_a;
    const Cell b = *t.entry.cell_b;
    if (!pairs.emplace(a, b).second) continue;
    const auto& qa = require_cell(r, a).bias_for(metric).per_query;
    const auto& qb = require_cell(r, b).bias_for(metric).per_query;
    std::map<std::string_view, double> beta_b;
    for (const auto& q : qb) beta_b.emplace(q.topic_id, q.beta);
    const std::string stem = "beta_" + pair_slug(a, b) + "_" + slug;
    const std::string series = cell_slug(a) + "~" + cell_slug(b);
    std::string body(kHeader);
    for (const auto& q : qa) {
      auto it = beta_b.find(q.topic_id);
      if (it == beta_b.end()) continue;
      body += format_exact(q.beta) + ',' + format_exact(it->second) + ',' + csv_field(q.topic_id) +
              ',' + series + '\n';
    }
    files[stem + ".csv"] = std::move(body);
    files[stem + ".diagonal.csv"] = diagonal(-bound, bound);
  }
  return files;
}

FileSet render_figure_data(const AuditReport& r, std::string_view metric) {
  auto m = parse_metric(metric);
  if (!m) throw ValidationError("unknown metric '" + std::string(metric) + "'");
  return render_figure_data(r, *m);
}

std::string render_summary(const AuditReport& r) {
  ordered_json j;
  j["format"] = "serpaudit-summary";
  j["version"] = 1;
  j["alpha"] = r.alpha;
  j["m"] = r.m;
  j["adjusted_alpha"] = r.adjusted_alpha;
  j["fwer_uncorrected"] = r.fwer_uncorrected;
  j["metric_config"] = {{"k", r.metric_config.k},
                        {"rbp_persistence", r.metric_config.rbp_persistence}};

  ordered_json tests = ordered_json::array();
  for (const auto& t : r.tests) {
    ordered_json e;
    e["id"] = t.entry.id;
    e["kind"] = to_string(t.entry.kind);
    e["cell_a"] = cell_json(t.entry.cell_a);
    e["cell_b"] = t.entry.cell_b ? cell_json(*t.entry.cell_b) : ordered_json(nullptr);
    e["metric"] = metric_slug(t.entry.metric);
    e["in_family"] = t.in_family;
    e["m"] = r.m;
    e["adjusted_alpha"] = r.adjusted_alpha;
    if (t.result) {
      e["status"] = "ok";
      e["test"] = to_string(t.result->kind);
      e["t"] = t.result->t_stat;
      e["df"] = t.result->df;
      e["p"] = t.result->p_value;
      e["n"] = t.result->n;
      e["mean_effect"] = t.result->mean_effect;
    } else {
      e["status"] = "untestable";
      e["reason"] = t.untestable;
    }
    e["raw_significant"] = t.verdict.raw_significant;
    e["corrected_significant"] = t.verdict.corrected_significant;
    e["unmatched_a"] = t.unmatched_a;
    e["unmatched_b"] = t.unmatched_b;
    if (t.moments) {
      e["moments"] = {{"skewness", t.moments->skewness},
                      {"excess_kurtosis", t.moments->excess_kurtosis}};
    }
    tests.push_back(std::move(e));
  }
  j["tests"] = std::move(tests);

  ordered_json cells = ordered_json::array();
  for (const auto& c : r.cells) {
    ordered_json e = cell_json(c.cell);
    e["n_queries"] = c.n_queries;
    e["performance"] = metric_array_json(c.performance);
    ordered_json bias = ordered_json::array();
    for (const auto& b : c.bias) {
      ordered_json per_query = ordered_json::array();
      for (const auto& q : b.per_query) {
        per_query.push_back({{"topic_id", q.topic_id},
                             {"conservative", q.conservative},
                             {"liberal", q.liberal},
                             {"beta", q.beta}});
      }
      bias.push_back({{"metric", metric_slug(b.metric)},
                      {"mb", b.mean_bias},
                      {"mab", b.mean_absolute_bias},
                      {"n_queries", b.n_queries},
                      {"per_query", std::move(per_query)}});
    }
    e["bias"] = std::move(bias);
    cells.push_back(std::move(e));
  }
  j["cells"] = std::move(cells);

  const auto& dq = r.data_quality;
  ordered_json q;
  q["topics"] = dq.topics;
  ordered_json completeness = ordered_json::array();
  for (const auto& c : dq.cells) {
    ordered_json e = cell_json(c.cell);
    e["serps"] = c.serps;
    e["short_serps"] = c.short_serps;
    e["missing_topics"] = c.missing_topics;
    completeness.push_back(std::move(e));
  }
  q["cells"] = std::move(completeness);
  ordered_json labels = ordered_json::array();
  for (const auto& l : dq.labels) {
    ordered_json stances = ordered_json::object();
    for (std::size_t s = 0; s < kStanceCount; ++s) {
      stances[std::string(to_string(static_cast<Stance>(s)))] = l.stance_counts[s];
    }
    labels.push_back({{"location", to_string(l.location)},
                      {"results", l.results},
                      {"labelled", l.labelled},
                      {"missing", l.missing},
                      {"stances", std::move(stances)}});
  }
  q["labels"] = std::move(labels);
  q["warnings"] = dq.warnings;
  j["data_quality"] = std::move(q);
  return j.dump(2) + "\n";
}

AuditReport parse_summary(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != "serpaudit-summary" || j.at("version") != 1) {
      throw Error("malformed summary: unsupported format");
    }
    AuditReport r;
    r.alpha = j.at("alpha").get<double>();
    r.m = j.at("m").get<int>();
    r.adjusted_alpha = j.at("adjusted_alpha").get<double>();
    r.fwer_uncorrected = j.at("fwer_uncorrected").get<double>();
    r.metric_config.k = j.at("metric_config").at("k").get<int>();
    r.metric_config.rbp_persistence = j.at("metric_config").at("rbp_persistence").get<double>();

    for (const auto& e : j.at("tests")) {
      TestOutcome t;
      t.entry.id = e.at("id").get<std::string>();
      auto kind = parse_test_kind(e.at("kind").get<std::string>());
      if (!kind) throw Error("malformed summary: bad test kind");
      t.entry.kind = *kind;
      t.entry.cell_a = cell_from_json(e.at("cell_a"));
      if (!e.at("cell_b").is_null()) t.entry.cell_b = cell_from_json(e.at("cell_b"));
      t.entry.metric = metric_from_json(e.at("metric"));
      t.in_family = e.at("in_family").get<bool>();
      if (e.at("status").get<std::string>() == "ok") {
        TestResult res;
        res.kind = e.at("test").get<std::string>() == "paired" ? TTestKind::paired
                                                               : TTestKind::one_sample;
        res.t_stat = e.at("t").get<double>();
        res.df = e.at("df").get<int>();
        res.p_value = e.at("p").get<double>();
        res.n = e.at("n").get<int>();
        res.mean_effect = e.at("mean_effect").get<double>();
        t.result = res;
      } else {
        t.untestable = e.at("reason").get<std::string>();
      }
      t.verdict.raw_significant = e.at("raw_significant").get<bool>();
      t.verdict.corrected_significant = e.at("corrected_significant").get<bool>();
      t.unmatched_a = e.at("unmatched_a").get<std::size_t>();
      t.unmatched_b = e.at("unmatched_b").get<std::size_t>();
      if (e.contains("moments")) {
        t.moments = SampleMoments{e.at("moments").at("skewness").get<double>(),
                                  e.at("moments").at("excess_kurtosis").get<double>()};
      }
      r.tests.push_back(std::move(t));
    }

    for (const auto& e : j.at("cells")) {
      CellReport c;
      c.cell = cell_from_json(e);
      c.n_queries = e.at("n_queries").get<std::size_t>();
      c.performance = metric_array_from_json(e.at("performance"));
      for (const auto& b : e.at("bias")) {
        BiasSummary s;
        s.cell = c.cell;
        s.metric = metric_from_json(b.at("metric"));
        s.mean_bias = b.at("mb").get<double>();
        s.mean_absolute_bias = b.at("mab").get<double>();
        s.n_queries = b.at("n_queries").get<std::size_t>();
        for (const auto& q : b.at("per_query")) {
          s.per_query.push_back({q.at("topic_id").get<std::string>(), s.metric,
                                 q.at("conservative").get<double>(), q.at("liberal").get<double>(),
                                 q.at("beta").get<double>()});
        }
        c.bias.push_back(std::move(s));
      }
      if (c.bias.size() != kMetricCount) throw Error("malformed summary: cell without all metrics");
      r.cells.push_back(std::move(c));
    }

    const auto& q = j.at("data_quality");
    r.data_quality.topics = q.at("topics").get<std::size_t>();
    for (const auto& e : q.at("cells")) {
      r.data_quality.cells.push_back({cell_from_json(e), e.at("serps").get<std::size_t>(),
                                      e.at("short_serps").get<std::size_t>(),
                                      e.at("missing_topics").get<std::size_t>()});
    }
    for (const auto& e : q.at("labels")) {
      LabelCoverage l;
      auto loc = parse_location(e.at("location").get<std::string>());
      if (!loc) throw Error("malformed summary: bad location");
      l.location = *loc;
      l.results = e.at("results").get<std::size_t>();
      l.labelled = e.at("labelled").get<std::size_t>();
      l.missing = e.at("missing").get<std::size_t>();
      for (std::size_t s = 0; s < kStanceCount; ++s) {
        l.stance_counts[s] =
            e.at("stances").at(std::string(to_string(static_cast<Stance>(s)))).get<std::size_t>();
      }
      r.data_quality.labels.push_back(l);
    }
    r.data_quality.warnings = q.at("warnings").get<std::vector<std::string>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed summary: ") + e.what());
  }
}

void write_files(const FileSet& files, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, contents] : files) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << contents;
    if (!out) throw Error("write failed for " + path.string());
  }
}

}  // namespace serpaudit
