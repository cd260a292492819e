#pragma once

// Constant-coefficient homogenized equations on the slow variable r in [0, 2pi):
//
//   wave:      rho_bar b_tt = E_eff b_rr
//   diffusion: b_tau = K_eff b_rr,   tau = eps^2 t
//
// Sine-mode data (including the mean part of well-prepared data) is solved in
// closed form; anything else goes through the same explicit schemes as the
// fine solvers.

#include <cstddef>
#include <span>
#include <vector>

#include "homog1d/cell_analysis.hpp"
#include "homog1d/initial_condition.hpp"

namespace homog1d {

struct CoarseSolution {
  std::vector<double> times;
  std::vector<double> r;
  std::vector<std::vector<double>> values;
  std::vector<std::vector<double>> gradient_values;
  EffectiveModel model;
  /// Closed-form solution: values are A_k sin(r) with A_k in mode_amplitudes.
  bool exact = false;
  std::vector<double> mode_amplitudes;
  /// Energy (wave) or mass (diffusion) per step, initial value first.
  std::vector<double> diagnostics;

  double spacing() const noexcept { return kTwoPi / static_cast<double>(r.size()); }

  /// b0(r, t_k) at arbitrary r: the closed form when exact, otherwise cubic
  /// Hermite interpolation from values and gradients.
  double sample(std::size_t k, double r) const;
  double sample_gradient(std::size_t k, double r) const;

  double max_relative_drift() const;
};

struct CoarseOptions {
  double cfl = 0.5;
  double safety = 0.4;
  /// Skip the closed form even for sine-mode data.
  bool force_numerical = false;
};

CoarseSolution solve_homog_wave(const EffectiveModel& model, const InitialCondition& ic,
                                double t_end, std::size_t r_points,
                                std::span<const double> output_times, CoarseOptions options = {});

/// tau_end and output times are slow times tau = eps^2 t.
CoarseSolution solve_homog_diffusion(const EffectiveModel& model, const InitialCondition& ic,
                                     double tau_end, std::size_t r_points,
                                     std::span<const double> output_times,
                                     CoarseOptions options = {});

}  // namespace homog1d
