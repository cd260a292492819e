#pragma once

// Run configuration: flat `key = value` text grouped under [section] headers,
// plus conversion of dimensional inputs to the scaled problem.
//
//   [problem]      equation, rho, coeff, ic
//   [grid]         epsilon | epsilon_list, points_per_period, quadrature,
//                  corrector_grid, r_points
//   [time]         t_end, output_times, cfl, safety, fit_epsilon
//   [output]       dir, tag
//   [dimensional]  l, lambda, rho0, E0, allow_large
//
// Times are coarse times: t for the wave equation, tau = eps^2 t for
// diffusion.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "homog1d/cell_analysis.hpp"
#include "homog1d/convergence.hpp"
#include "homog1d/initial_condition.hpp"

namespace homog1d {

struct DimensionalSpec {
  double cell_length = 0.0;   // l, metres
  double wavelength = 0.0;    // lambda, metres
  double rho0 = 0.0;          // kg/m
  double e0 = 0.0;            // line modulus
  bool allow_large = false;   // proceed even when l >= lambda

  bool operator==(const DimensionalSpec&) const = default;
};

struct ScaleReport {
  double epsilon = 0.0;
  double length_scale = 0.0;  // x = l x'
  double time_scale = 0.0;    // t = T t',  T = lambda sqrt(rho0 / E0)
  bool large_parameter = false;

  std::string describe() const;
};

/// eps = l / lambda. l >= lambda raises Error(NotSmallParameter) unless
/// allow_large is set, in which case the report is flagged instead.
ScaleReport nondimensionalize(const DimensionalSpec& spec);

struct RunConfig {
  EquationKind equation = EquationKind::Wave;
  std::string rho_spec = "constant:1";
  std::string coeff_spec = "cosine:2,1";
  InitialPreset ic = InitialPreset::WellPrepared;

  std::optional<double> epsilon;
  std::optional<std::vector<double>> epsilon_list;
  std::size_t points_per_period = 64;
  std::size_t quadrature = Quadrature::kDefaultSampleCount;
  std::size_t corrector_grid = 1024;
  std::size_t r_points = 256;

  double t_end = 1.0;
  std::vector<double> output_times;
  double cfl = 0.5;
  double safety = 0.4;
  double fit_epsilon = 1.0 / 16;

  std::string out_dir = "out";
  std::string tag = "run";

  std::optional<DimensionalSpec> dimensional;

  bool operator==(const RunConfig&) const = default;
};

/// Parses configuration text, applies `section.key=value` (or `key=value`)
/// overrides in order, then validates. Errors are Error(Config) naming the
/// offending key or line.
RunConfig parse_config(std::string_view text, std::span<const std::string> overrides = {});
RunConfig load_config(const std::filesystem::path& path,
                      std::span<const std::string> overrides = {});

/// Inverse of parse_config, full precision.
std::string write_config(const RunConfig& config);

void apply_override(RunConfig& config, std::string_view assignment);
void validate(const RunConfig& config);

/// The single eps of a run: `epsilon`, else the dimensional block.
double resolve_epsilon(const RunConfig& config);

/// Output times (coarse units), defaulting to {0, t_end}.
std::vector<double> resolve_output_times(const RunConfig& config);

/// Builds the harness configuration; field files resolve against base_dir.
SweepConfig make_sweep_config(const RunConfig& config, const std::filesystem::path& base_dir);

}  // namespace homog1d
