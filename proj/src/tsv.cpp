#include "tsv.hpp"

#include "serpaudit/types.hpp"

namespace serpaudit::detail {

bool is_valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    char32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > s.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong forms, surrogates and out-of-range code points.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
      return false;
    }
    i += len;
  }
  return true;
}

TsvReader::TsvReader(std::istream& in, std::string source,
                     std::span<const std::string_view> columns)
    : in_(in), source_(std::move(source)), n_columns_(columns.size()) {
  if (!read_content_line()) fail("missing header line");
  split();
  bool ok = fields_.size() == columns.size();
  for (std::size_t i = 0; ok && i < columns.size(); ++i) ok = fields_[i] == columns[i];
  if (!ok) {
    std::string expected;
    for (auto c : columns) {
      if (!expected.empty()) expected += "\\t";
      expected += c;
    }
    fail("bad header, expected: " + expected);
  }
}

bool TsvReader::read_content_line() {
  while (std::getline(in_, line_)) {
    ++line_no_;
    if (!line_.empty() && line_.back() == '\r') line_.pop_back();
    if (line_.empty() || line_.front() == '#') continue;
    if (!is_valid_utf8(line_)) fail("invalid UTF-8");
    return true;
  }
  return false;
}

void TsvReader::split() {
  fields_.clear();
  std::string_view rest(line_);
  while (true) {
    const auto tab = rest.find('\t');
    fields_.push_back(rest.substr(0, tab));
    if (tab == std::string_view::npos) break;
    rest.remove_prefix(tab + 1);
  }
}

bool TsvReader::next() {
  if (!read_content_line()) return false;
  split();
  if (fields_.size() != n_columns_) {
    fail("expected " + std::to_string(n_columns_) + " tab-separated fields, got " +
         std::to_string(fields_.size()));
  }
  return true;
}

void TsvReader::fail(std::string_view what) const {
  throw ParseError(source_, line_no_, what);
}

}  // namespace serpaudit::detail
