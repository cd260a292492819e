#pragma once

// Generated matplotlib scripts. Nothing is rendered here; the scripts read
// the CSVs by path relative to their own location.

#include <filesystem>
#include <string>
#include <vector>

namespace homog1d {

struct PlotSeries {
  std::string label;
  std::filesystem::path csv;
};

/// Log-log error-vs-eps plot with the series `plain` and `corrected`.
std::string render_report_plot(const std::filesystem::path& report_csv);

/// Overlay of snapshot CSVs (two columns: coordinate, value). Throws
/// Error(InvalidArgument) for an empty series list.
std::string render_overlay_plot(const std::vector<PlotSeries>& series, const std::string& title);

/// Writes a report plot script at `script`; `report_csv` must exist.
void emit_report_plot_script(const std::filesystem::path& report_csv,
                             const std::filesystem::path& script);

/// Writes an overlay script at `script`; every CSV must exist.
void emit_overlay_plot_script(const std::vector<PlotSeries>& series,
                              const std::filesystem::path& script, const std::string& title);

}  // namespace homog1d
