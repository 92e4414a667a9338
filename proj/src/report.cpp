#include "qspline/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace qspline {

namespace {

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) {
    return field;
  }
  std::string out = "\"";
  for (const char ch : field) {
    if (ch == '"') {
      out += '"';
    }
    out += ch;
  }
  out += '"';
  return out;
}

void write_line(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) {
      out << ',';
    }
    out << quote(cells[i]);
  }
  out << '\n';
}

}  // namespace

void CsvReport::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) {
    throw std::logic_error("CSV row width does not match header");
  }
  rows.push_back(std::move(row));
}

void CsvReport::write_csv(std::ostream& out) const {
  write_line(out, header);
  for (const auto& row : rows) {
    write_line(out, row);
  }
}

void CsvReport::write_pretty(std::ostream& out) const {
  std::vector<std::size_t> width(header.size(), 0);
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& row : rows) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      out << cells[c];
      if (c + 1 < cells.size()) {
        out << std::string(width[c] - cells[c].size() + 2, ' ');
      }
    }
    out << '\n';
  };
  line(header);
  for (const auto& row : rows) {
    line(row);
  }
}

std::string format_number(double value) {
  if (std::isnan(value)) {
    return "nan";
  }
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", value);
  return buf;
}

std::string format_optional(const std::optional<double>& value) { return value ? format_number(*value) : ""; }

}  // namespace qspline
