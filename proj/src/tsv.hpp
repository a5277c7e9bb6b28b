#pragma once

// Reader for the tab-separated record files used by the dataset and judgment
// formats: one header line naming the columns, '#' comment lines and blank
// lines ignored, UTF-8 text, optional CRLF line endings.

#include <cstddef>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace serpaudit::detail {

bool is_valid_utf8(std::string_view s);

class TsvReader {
 public:
  TsvReader(std::istream& in, std::string source, std::span<const std::string_view> columns);

  // Advances to the next record. Returns false at end of input.
  bool next();

  std::string_view field(std::size_t i) const { return fields_[i]; }
  std::size_t line() const { return line_no_; }
  const std::string& source() const { return source_; }

  [[noreturn]] void fail(std::string_view what) const;

 private:
  bool read_content_line();
  void split();

  std::istream& in_;
  std::string source_;
  std::size_t n_columns_;
  std::string line_;
  std::vector<std::string_view> fields_;
  std::size_t line_no_ = 0;
};

}  // namespace serpaudit::detail
