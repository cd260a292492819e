#include "homog1d/plot_script.hpp"

#include <fstream>

#include <fmt/format.h>

#include "homog1d/csv.hpp"
#include "homog1d/errors.hpp"

namespace homog1d {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '\\' || c == '"') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string relative_to(const std::filesystem::path& target, const std::filesystem::path& script) {
  const auto base = script.parent_path().empty() ? std::filesystem::path(".") : script.parent_path();
  std::error_code ec;
  auto rel = std::filesystem::relative(target, base, ec);
  if (ec || rel.empty()) return target.generic_string();
  return rel.generic_string();
}

void require_exists(const std::filesystem::path& p) {
  if (!std::filesystem::exists(p)) {
    throw Error(ErrorCode::Io, fmt::format("plot input '{}' does not exist", p.string()));
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  ensure_parent_directory(path);
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, fmt::format("cannot write plot script '{}'", path.string()));
  out << text;
  if (!out) throw Error(ErrorCode::Io, fmt::format("write to '{}' failed", path.string()));
}

constexpr const char* kPrelude = R"(#!/usr/bin/env python3
# Generated by homog1d.
import csv
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = Path(__file__).resolve().parent
)";

}  // namespace

std::string render_report_plot(const std::filesystem::path& report_csv) {
  std::string s = kPrelude;
  s += fmt::format("REPORT = HERE / {}\n", quoted(report_csv.generic_string()));
  s += R"(SERIES = [
    ("plain", 1),
    ("corrected", 2),
]

eps, cols = [], {1: [], 2: []}
with open(REPORT) as f:
    rows = csv.reader(f)
    next(rows)
    for row in rows:
        if len(row) != 3:
            continue
        eps.append(float(row[0]))
        for k in cols:
            cols[k].append(float(row[k]))

fig, ax = plt.subplots()
for label, k in SERIES:
    ax.loglog(eps, cols[k], "o-", label=label)
ax.set_xlabel("epsilon")
ax.set_ylabel("relative L2 error")
ax.legend()
fig.savefig(REPORT.with_suffix(".png"), dpi=150)
)";
  return s;
}

std::string render_overlay_plot(const std::vector<PlotSeries>& series, const std::string& title) {
  if (series.empty()) {
    throw Error(ErrorCode::InvalidArgument, "overlay plot needs at least one series");
  }
  std::string s = kPrelude;
  s += "SERIES = [\n";
  for (const auto& entry : series) {
    s += fmt::format("    ({}, HERE / {}),\n", quoted(entry.label), quoted(entry.csv.generic_string()));
  }
  s += "]\n";
  s += fmt::format("TITLE = {}\n", quoted(title));
  s += R"(
fig, ax = plt.subplots()
for label, path in SERIES:
    xs, ys = [], []
    with open(path) as f:
        rows = csv.reader(f)
        axis = next(rows)[0]
        for row in rows:
            xs.append(float(row[0]))
            ys.append(float(row[1]))
    ax.plot(xs, ys, label=label)
ax.set_xlabel(axis)
ax.set_title(TITLE)
ax.legend()
fig.savefig(Path(__file__).with_suffix(".png"), dpi=150)
)";
  return s;
}

void emit_report_plot_script(const std::filesystem::path& report_csv,
                             const std::filesystem::path& script) {
  require_exists(report_csv);
  write_text(script, render_report_plot(relative_to(report_csv, script)));
}

void emit_overlay_plot_script(const std::vector<PlotSeries>& series,
                              const std::filesystem::path& script, const std::string& title) {
  std::vector<PlotSeries> rel;
  rel.reserve(series.size());
  for (const auto& s : series) {
    require_exists(s.csv);
    rel.push_back({s.label, relative_to(s.csv, script)});
  }
  write_text(script, render_overlay_plot(rel, title));
}

}  // namespace homog1d
