#pragma once

// Text formats for rectangles.
//
// CSV: one line per row, empty cells as empty fields, no header.
// JSON: {"m","n","k","s","cells":[{"row","col","value"}...]}, 0-based,
//       cells sorted by (row, col). k and s are optional on input.
// Text: space-aligned columns with "." for empty cells; output only.

#include <charconv>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "smr/core.hpp"

namespace smr {

enum class Format { csv, json, text };

inline std::optional<Format> parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  if (name == "text") return Format::text;
  return std::nullopt;
}

inline std::string to_csv(const SparseRectangle& rect) {
  std::ostringstream os;
  for (int r = 0; r < rect.rows(); ++r) {
    for (int c = 0; c < rect.cols(); ++c) {
      if (c > 0) os << ',';
      if (auto v = rect.at(r, c)) os << *v;
    }
    os << '\n';
  }
  return os.str();
}

namespace detail {

inline Value parse_int(std::string_view field, int line, int column) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) field.remove_suffix(1);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  Value v = 0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || end != field.data() + field.size()) {
    fail(ErrorCode::parse, concat("line ", line, ", field ", column + 1, ": not an integer: '", field, "'"));
  }
  return v;
}

inline bool blank(std::string_view s) { return s.find_first_not_of(" \t\r") == std::string_view::npos; }

}  // namespace detail

inline SparseRectangle from_csv(std::string_view text) {
  std::vector<std::vector<std::optional<Value>>> grid;
  std::size_t start = 0;
  int line_no = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (detail::blank(line)) continue;
    std::vector<std::optional<Value>> row;
    std::size_t from = 0;
    while (true) {
      const std::size_t comma = line.find(',', from);
      const std::string_view field = line.substr(from, comma == std::string_view::npos ? std::string_view::npos : comma - from);
      if (detail::blank(field)) {
        row.emplace_back(std::nullopt);
      } else {
        row.emplace_back(detail::parse_int(field, line_no, static_cast<int>(row.size())));
      }
      if (comma == std::string_view::npos) break;
      from = comma + 1;
    }
    if (!grid.empty() && row.size() != grid.front().size()) {
      detail::fail(ErrorCode::parse, detail::concat("line ", line_no, " has ", row.size(), " fields, expected ", grid.front().size()));
    }
    grid.push_back(std::move(row));
  }
  try {
    return SparseRectangle::from_grid(grid);
  } catch (const Error& e) {
    detail::fail(ErrorCode::parse, e.what());
  }
}

inline nlohmann::ordered_json to_json(const SparseRectangle& rect, std::optional<int> k = std::nullopt, std::optional<int> s = std::nullopt) {
  nlohmann::ordered_json j;
  j["m"] = rect.rows();
  j["n"] = rect.cols();
  if (k) j["k"] = *k;
  if (s) j["s"] = *s;
  auto cells = nlohmann::ordered_json::array();
  for (const Cell& c : rect.cells()) cells.push_back({{"row", c.row}, {"col", c.col}, {"value", c.value}});
  j["cells"] = std::move(cells);
  return j;
}

inline nlohmann::ordered_json to_json(const SparseRectangle& rect, const Params& p) { return to_json(rect, p.k, p.s); }

inline SparseRectangle from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    const int m = j.at("m").get<int>();
    const int n = j.at("n").get<int>();
    if (m < 0 || n < 0) detail::fail(ErrorCode::parse, "negative dimensions");
    std::vector<Cell> cells;
    for (const auto& c : j.at("cells")) cells.push_back({c.at("row").get<int>(), c.at("col").get<int>(), c.at("value").get<Value>()});
    return SparseRectangle(m, n, std::move(cells));
  } catch (const nlohmann::json::exception& e) {
    detail::fail(ErrorCode::parse, std::string("bad JSON: ") + e.what());
  } catch (const Error& e) {
    detail::fail(ErrorCode::parse, e.what());
  }
}

inline std::string to_text(const SparseRectangle& rect) {
  std::size_t width = 1;
  for (const Cell& c : rect.cells()) width = std::max(width, std::to_string(c.value).size());
  std::ostringstream os;
  for (int r = 0; r < rect.rows(); ++r) {
    for (int c = 0; c < rect.cols(); ++c) {
      if (c > 0) os << ' ';
      const auto v = rect.at(r, c);
      os << std::setw(static_cast<int>(width)) << (v ? std::to_string(*v) : std::string("."));
    }
    os << '\n';
  }
  return os.str();
}

inline std::string format_rectangle(const SparseRectangle& rect, Format f, std::optional<Params> p = std::nullopt) {
  switch (f) {
    case Format::csv: return to_csv(rect);
    case Format::json: return (p ? to_json(rect, *p) : to_json(rect)).dump(2) + "\n";
    case Format::text: return to_text(rect);
  }
  return {};
}

// JSON when the first non-blank character is '{', CSV otherwise.
inline SparseRectangle parse_rectangle(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return from_json(text);
  return from_csv(text);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) detail::fail(ErrorCode::parse, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) detail::fail(ErrorCode::parse, "cannot read " + path);
  return os.str();
}

inline SparseRectangle read_rectangle(const std::string& path) { return parse_rectangle(read_file(path)); }

}  // namespace smr
