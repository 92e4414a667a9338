#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qspline {

/// Rows of string cells under a fixed header. Numbers are formatted with
/// format_number so output is byte-stable across runs.
struct CsvReport {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  /// RFC 4180 style: fields containing ',' '"' or a newline are quoted.
  void write_csv(std::ostream& out) const;
  /// Left-aligned columns separated by two spaces.
  void write_pretty(std::ostream& out) const;
};

/// Scientific notation with 6 significant digits after the point, '.' as the
/// decimal separator regardless of locale.
std::string format_number(double value);
std::string format_optional(const std::optional<double>& value);

}  // namespace qspline
