#pragma once

// Rendering of an AuditReport: comparison tables (aligned text and CSV),
// figure point sets (CSV), and a JSON summary that round-trips the report.

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "serpaudit/audit.hpp"

namespace serpaudit {

// file name -> contents. Rendering never touches the file system.
using FileSet = std::map<std::string, std::string>;

enum class PValueStyle { raw, threshold };

std::optional<PValueStyle> parse_p_value_style(std::string_view s);

struct RenderOptions {
  PValueStyle p_value_style = PValueStyle::raw;
  std::map<Engine, std::string> engine_names;  // display aliases; default "Engine 1"/"Engine 2"

  std::string engine_name(Engine e) const;
};

// Fixed 4-decimal rendering with ties to even ("0.03125" -> "0.0312").
// Negative zero renders as "0.0000".
std::string format_fixed4(double v);

// Raw style: 4 decimals, "< 0.0001" below that. Threshold style: "> alpha",
// "< alpha" or "< 0.0001".
std::string format_p_value(double p, double alpha, PValueStyle style);

// Shortest text that parses back to the same double.
std::string format_exact(double v);

struct TableRow {
  std::string label;
  std::vector<std::string> values;  // one per metric column
  std::vector<std::string> test_ids;  // tests whose p-values the row shows
};

struct RowGroup {
  std::string label;  // "MB", "MAB", or empty
  std::vector<TableRow> rows;
};

struct TableSpec {
  std::string name;   // file stem
  std::string title;
  std::vector<std::string> columns;
  std::vector<RowGroup> groups;
  std::vector<std::string> notes;
};

// Performance and bias comparison tables in plan order, then the existence table.
std::vector<TableSpec> build_tables(const AuditReport& r, const RenderOptions& options);

std::string render_table_text(const TableSpec& t);
std::string render_table_csv(const TableSpec& t);
std::string render_data_quality(const AuditReport& r);

// <name>.txt and <name>.csv for every table, plus data_quality.txt.
FileSet render_tables(const AuditReport& r, const RenderOptions& options = {});

// Per location: leaning_<LOC>_<metric>.csv with x = M_c, y = M_l per query
// and one series per engine. Per compared cell pair: beta_<pair>_<metric>.csv
// with x = beta(a), y = beta(b) per matched query. Each point file has a
// <stem>.diagonal.csv companion with the endpoints of the x = y reference line.
FileSet render_figure_data(const AuditReport& r, Metric metric);
// Throws ValidationError for an unknown metric name.
FileSet render_figure_data(const AuditReport& r, std::string_view metric);

std::string render_summary(const AuditReport& r);
// Inverse of render_summary. Throws Error on malformed input.
AuditReport parse_summary(std::string_view text);

void write_files(const FileSet& files, const std::filesystem::path& dir);

}  // namespace serpaudit
