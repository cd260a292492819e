#include "homog1d/csv.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "homog1d/errors.hpp"
#include "parse_util.hpp"

namespace homog1d {

std::string format_full(double value) { return fmt::format("{:.17g}", value); }

std::string format_fixed6(double value) { return fmt::format("{:.6f}", value); }

void ensure_parent_directory(const std::filesystem::path& path) {
  const auto parent = path.parent_path();
  if (parent.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(parent, ec);
  if (ec) {
    throw Error(ErrorCode::Io,
                fmt::format("cannot create directory '{}': {}", parent.string(), ec.message()));
  }
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& headers,
               const std::vector<std::vector<double>>& columns) {
  if (headers.size() != columns.size()) {
    throw Error(ErrorCode::InvalidArgument, "CSV header/column count mismatch");
  }
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != rows) throw Error(ErrorCode::InvalidArgument, "CSV columns differ in length");
  }
  ensure_parent_directory(path);
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, fmt::format("cannot write '{}'", path.string()));

  for (std::size_t k = 0; k < headers.size(); ++k) out << (k ? "," : "") << headers[k];
  out << '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < columns.size(); ++k) {
      out << (k ? "," : "") << format_full(columns[k][i]);
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::Io, fmt::format("write to '{}' failed", path.string()));
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, fmt::format("cannot open '{}'", path.string()));
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::Io, fmt::format("'{}' is empty", path.string()));
  }
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) table.headers.emplace_back(detail::trim(cell));
  }
  table.columns.resize(table.headers.size());
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto values = detail::parse_double_list(line);
    if (!values || values->size() != table.headers.size()) {
      throw Error(ErrorCode::Io, fmt::format("{}:{}: malformed row", path.string(), line_no));
    }
    for (std::size_t k = 0; k < values->size(); ++k) table.columns[k].push_back((*values)[k]);
  }
  return table;
}

}  // namespace homog1d
