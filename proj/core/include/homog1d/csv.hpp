#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace homog1d {

/// 17 significant digits; parses back to the identical double.
std::string format_full(double value);

/// Six decimals, for console lines.
std::string format_fixed6(double value);

struct CsvTable {
  std::vector<std::string> headers;
  std::vector<std::vector<double>> columns;
};

/// Writes equal-length columns under a one-line header. Creates parent
/// directories as needed; throws Error(Io) if the file cannot be written.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& headers,
               const std::vector<std::vector<double>>& columns);

/// Reads a numeric CSV written by write_csv.
CsvTable read_csv(const std::filesystem::path& path);

/// Creates the parent directories of `path`.
void ensure_parent_directory(const std::filesystem::path& path);

}  // namespace homog1d
