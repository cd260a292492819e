#pragma once

// Finite-difference reference solvers for the heterogeneous equations on a
// periodic domain x in [0, 2*pi/eps) holding 1/eps coefficient cells:
//
//   wave:      (E a_x)_x = eps^2 rho a_tt      (leapfrog in time)
//   diffusion: a_t = (K a_x)_x                 (forward Euler in time)
//
// Both use the flux-form operator
//   D(a)_i = [E_{i+1/2}(a_{i+1} - a_i) - E_{i-1/2}(a_i - a_{i-1})] / h^2
// with the coefficient sampled at cell faces x = (i + 1/2) h.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "homog1d/initial_condition.hpp"
#include "homog1d/periodic_field.hpp"

namespace homog1d {

class Grid1D {
 public:
  /// 0 < eps <= 1/4 with 1/eps integral (to 1e-9 relative).
  Grid1D(double epsilon, std::size_t points_per_period);

  double epsilon() const noexcept { return epsilon_; }
  std::size_t cells() const noexcept { return cells_; }
  std::size_t points_per_period() const noexcept { return points_per_period_; }
  std::size_t n_total() const noexcept { return cells_ * points_per_period_; }
  double h() const noexcept { return kTwoPi / static_cast<double>(points_per_period_); }
  double length() const noexcept { return kTwoPi * static_cast<double>(cells_); }
  double x(std::size_t i) const noexcept { return static_cast<double>(i) * h(); }
  std::vector<double> nodes() const;

  bool operator==(const Grid1D&) const = default;

 private:
  double epsilon_;
  std::size_t cells_;
  std::size_t points_per_period_;
};

/// Second-difference operator in flux form on a periodic grid.
class FluxOperator {
 public:
  FluxOperator(std::vector<double> face_coefficients, double h);

  std::size_t size() const noexcept { return faces_.size(); }
  double h() const noexcept { return h_; }
  std::span<const double> faces() const noexcept { return faces_; }

  void apply(std::span<const double> a, std::span<double> out) const;

 private:
  std::vector<double> faces_;
  double h_;
};

/// Leapfrog for mass_i * a_tt = D(a)_i. State is the pair (a^{n-1}, a^n).
class LeapfrogStepper {
 public:
  /// Starts from a^0 and v^0 with a^{-1} = a^0 - dt v^0 + dt^2 D(a^0)/(2 mass).
  LeapfrogStepper(FluxOperator op, std::vector<double> mass, double dt,
                  std::span<const double> a0, std::span<const double> v0);

  void step();
  /// Time reversal: swaps a^{n-1} and a^n.
  void reverse() noexcept { previous_.swap(current_); }

  std::span<const double> current() const noexcept { return current_; }
  std::span<const double> previous() const noexcept { return previous_; }
  double dt() const noexcept { return dt_; }

  /// Modified energy of the pair (a^{n-1}, a^n), exactly conserved by the scheme:
  /// h * sum[ mass/2 ((a^n - a^{n-1})/dt)^2
  ///          + E_{i+1/2} (delta a^{n-1})(delta a^n) / (2 h^2) ].
  double energy() const;

 private:
  FluxOperator op_;
  std::vector<double> mass_;
  std::vector<double> dt2_over_mass_;
  double dt_;
  std::vector<double> previous_;
  std::vector<double> current_;
  std::vector<double> scratch_;
};

struct SimulationResult {
  std::vector<double> times;
  std::vector<std::vector<double>> snapshots;
  Grid1D grid;
  /// Discrete energy (wave) or total mass (diffusion), initial value first,
  /// then one entry per time step.
  std::vector<double> diagnostics;
  /// Guard added to |initial mass| when forming relative mass drift.
  double diagnostic_scale = 0.0;
  double dt = 0.0;
  std::size_t steps = 0;
  /// True when a requested time step exceeded the stability bound and was
  /// reduced.
  bool dt_reduced = false;
  std::optional<double> requested_dt;

  /// max_k |diag_k - diag_0| / (|diag_0| + diagnostic_scale)
  double max_relative_drift() const;
};

struct WaveOptions {
  double cfl = 0.5;
  std::optional<double> requested_dt;
  /// When false a requested step above the bound is used as given; only
  /// meant for exercising the instability detection.
  bool enforce_stability = true;
};

struct DiffusionOptions {
  double safety = 0.4;
  std::optional<double> requested_dt;
  bool enforce_stability = true;
};

/// Stable step cfl * h * eps * sqrt(rho_min / E_max).
double wave_time_step_bound(const PeriodicField& rho, const PeriodicField& modulus,
                            const Grid1D& grid, double cfl);

/// Stable step safety * h^2 / (2 K_max).
double diffusion_time_step_bound(const PeriodicField& conductivity, const Grid1D& grid,
                                 double safety);

/// Node-sampled rho and face-sampled E on the grid.
std::vector<double> sample_nodes(const PeriodicField& field, const Grid1D& grid);
std::vector<double> sample_faces(const PeriodicField& field, const Grid1D& grid);

/// Snapshots are taken at the first step time >= each requested time (which
/// must be ascending within [0, t_end]); recorded times are step times.
SimulationResult solve_fine_wave(const PeriodicField& rho, const PeriodicField& modulus,
                                 const Grid1D& grid, const InitialCondition& ic, double t_end,
                                 std::span<const double> output_times, WaveOptions options = {});

/// t_end and output times are in the fine time t (slow time tau = eps^2 t).
SimulationResult solve_fine_diffusion(const PeriodicField& conductivity, const Grid1D& grid,
                                      const InitialCondition& ic, double t_end,
                                      std::span<const double> output_times,
                                      DiffusionOptions options = {});

/// One CSV per output time, `<dir>/<tag>_t<index>.csv`, header `<axis>,value`.
std::vector<std::filesystem::path> write_snapshots(const std::vector<std::vector<double>>& snapshots,
                                                   std::span<const double> axis,
                                                   const std::filesystem::path& dir,
                                                   const std::string& tag,
                                                   const std::string& axis_name);

}  // namespace homog1d
