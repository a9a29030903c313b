#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace mbm {

/// Shortest text that reads back to the same double ("%.17g"; inf/nan
/// spelled "inf", "-inf", "nan").
std::string format_double(double x);

/// Strict parse of a full field; throws DomainError on trailing junk.
double parse_double(std::string_view text);

/// Header-first comma-separated table with unquoted fields.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a named column; throws DomainError when absent.
  std::size_t column_index(std::string_view name) const;
  bool has_column(std::string_view name) const;
  std::vector<double> numeric_column(std::string_view name) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace mbm
