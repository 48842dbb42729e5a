#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rrf/core_model.hpp"
#include "rrf/svm.hpp"

namespace rrf::io {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline double parse_field(std::string_view field, int line, int column) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(ErrorCode::SchemaError, "line " + std::to_string(line) + ", column " +
                                            std::to_string(column) + ": not a number: \"" +
                                            std::string(field) + "\"");
  }
  return value;
}

}  // namespace detail

/// Comma-separated training data, no header: coordinates, then the label.
inline TrainingSet parse_csv(std::string_view text) {
  TrainingSet out;
  int expected_columns = -1;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = detail::trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;

    std::vector<double> values;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      const auto field = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      values.push_back(detail::parse_field(field, line_no, static_cast<int>(values.size()) + 1));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (values.size() < 2) {
      throw Error(ErrorCode::RaggedRows, "line " + std::to_string(line_no) + ": need at least 2 columns");
    }
    if (expected_columns < 0) expected_columns = static_cast<int>(values.size());
    if (static_cast<int>(values.size()) != expected_columns) {
      throw Error(ErrorCode::RaggedRows, "line " + std::to_string(line_no) + " has " +
                                             std::to_string(values.size()) + " columns, expected " +
                                             std::to_string(expected_columns));
    }
    const double label = values.back();
    if (label != 1.0 && label != -1.0) {
      throw Error(ErrorCode::BadLabels, "line " + std::to_string(line_no) + ": label must be -1 or 1");
    }
    Vector u(static_cast<Eigen::Index>(values.size() - 1));
    for (std::size_t j = 0; j + 1 < values.size(); ++j) u(static_cast<Eigen::Index>(j)) = values[j];
    out.points.push_back(std::move(u));
    out.labels.push_back(static_cast<int>(label));
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline TrainingSet ingest_csv(const std::string& path) { return parse_csv(read_file(path)); }

}  // namespace rrf::io
