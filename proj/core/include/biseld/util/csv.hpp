#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace biseld::util {

/// Minimal CSV reader for the project's own flat formats (no quoting).
/// Blank lines are skipped; `line` numbers are 1-based file lines.
struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<CsvRow> rows;
};

CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(std::string_view text, const std::string& source_name);

/// Throws IoError naming the file when the header differs from `expected`.
void require_header(const CsvTable& table, const std::vector<std::string>& expected,
                    const std::string& source_name);

double parse_double(const std::string& field, const std::string& source_name,
                    std::size_t line);
long long parse_int(const std::string& field, const std::string& source_name,
                    std::size_t line);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace biseld::util
