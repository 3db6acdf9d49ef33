#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace vcg::csv {

struct Row {
  std::size_t line = 0;  // 1-based line number in the source file
  std::vector<std::string> fields;
};

struct Table {
  std::vector<std::string> header;
  std::vector<Row> rows;

  /// Index of a header column; throws DataError naming the missing column.
  std::size_t column(std::string_view name) const;
};

/// Reads a comma-separated file with a header line. Blank lines are skipped.
/// Quoting is not supported; no field in the documented schemas needs it.
Table read(const std::filesystem::path& path);

std::vector<std::string> split(std::string_view line);

double parse_double(const std::string& field, std::size_t line, std::string_view column);
long long parse_int(const std::string& field, std::size_t line, std::string_view column);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace vcg::csv
