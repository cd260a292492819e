#pragma once

// eps-sweeps comparing the fine solution with the homogenized one, with and
// without the first-order corrector, plus empirical recovery of the effective
// constant from single-mode fine runs.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "homog1d/cell_analysis.hpp"
#include "homog1d/fine_solver.hpp"
#include "homog1d/initial_condition.hpp"
#include "homog1d/periodic_field.hpp"

namespace homog1d {

struct SweepConfig {
  EquationKind equation = EquationKind::Wave;
  PeriodicField rho = PeriodicField::constant(1.0);
  PeriodicField coeff = PeriodicField::cosine(2.0, 1.0);
  std::vector<double> epsilons{1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64};
  std::size_t points_per_period = 64;
  InitialPreset ic = InitialPreset::WellPrepared;
  /// Coarse time of the comparison: t for wave, tau = eps^2 t for diffusion.
  double comparison_time = 1.0;
  double cfl = 0.5;
  double safety = 0.4;
  Quadrature quad{};
  std::size_t corrector_grid = 1024;
  std::size_t r_points = 256;
  /// eps of the dedicated run that extracts the effective constant.
  double fit_epsilon = 1.0 / 16;
  /// 0 = HOMOG1D_THREADS, falling back to the hardware concurrency.
  std::size_t threads = 0;
};

/// Named presets: {wave,diffusion}-{constant,cosine,twophase}.
SweepConfig preset_sweep(std::string_view name);
std::vector<std::string> preset_names();

struct CaseOutcome {
  double epsilon = 0.0;
  double err_plain = 0.0;
  double err_corrected = 0.0;
  /// Relative energy (wave) or mass (diffusion) drift of the fine run.
  double conservation_drift = 0.0;
  double comparison_time = 0.0;
  /// Empty on success; otherwise the reason the case was dropped.
  std::string failure;

  bool ok() const noexcept { return failure.empty(); }
};

struct ConvergenceReport {
  std::vector<double> epsilons;
  std::vector<double> err_plain;
  std::vector<double> err_corrected;
  std::vector<CaseOutcome> cases;
  double rate_plain = 0.0;
  double rate_corrected = 0.0;
  double fitted_constant = 0.0;
  /// <coeff^-1>^-1 from quadrature, for comparison with fitted_constant.
  double expected_constant = 0.0;
  double fit_conservation_drift = 0.0;
};

/// Fine solution, plain homogenized field b0(eps x) and corrected field
/// b0 + eps chi b0_r on the fine grid at the comparison time.
struct Comparison {
  CaseOutcome outcome;
  std::vector<double> x;
  std::vector<double> fine;
  std::vector<double> plain;
  std::vector<double> corrected;
};

/// Single-eps comparison; errors (including instability) propagate.
Comparison compare_at(const SweepConfig& config, double epsilon);

/// Cases run concurrently; the report is assembled in input order. Throws
/// Error(InsufficientData) when fewer than 3 cases survive.
ConvergenceReport run_sweep(const SweepConfig& config);

/// Least-squares slope of ln(err) against ln(eps).
double fit_log_log_slope(std::span<const double> epsilons, std::span<const double> errors);

/// sqrt(sum (f-g)^2 h) / sqrt(sum g^2 h); Error(DivisionGuard) when g == 0.
double l2_relative_error(std::span<const double> fine, std::span<const double> reference, double h);

/// Amplitude of the mode pair {sin, cos}(k x) in each snapshot.
std::vector<double> modal_amplitudes(const SimulationResult& result, double wavenumber);

/// K_fit = -ln(A_last / A_first) / (k^2 (t_last - t_first)), k defaulting to eps.
double fit_decay_rate(const SimulationResult& result, std::optional<double> mode_wavenumber = {});

/// Angular frequency of the standing mode sin(eps x) cos(omega t), from the
/// spacing of zero crossings of its projection. In the fine time of the
/// scaled wave equation this equals the homogenized speed sqrt(E_eff/rho_bar).
double fit_wave_speed(const SimulationResult& result);

/// Header `epsilon,err_plain,err_corrected`, then rate/constant footer rows.
void write_report_csv(const ConvergenceReport& report, const std::filesystem::path& path);

/// Threads used by run_sweep for `requested` (0 = environment / hardware).
std::size_t resolve_thread_count(std::size_t requested);

}  // namespace homog1d
