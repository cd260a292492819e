#pragma once

#include <optional>
#include <string_view>

#include "homog1d/cell_analysis.hpp"

namespace homog1d {

enum class InitialPreset { SineMode, Gaussian, WellPrepared };

std::string_view to_string(InitialPreset preset) noexcept;
InitialPreset parse_initial_preset(std::string_view name);

/// Initial displacement (the initial velocity is always zero). Fine-grid
/// values are sampled at physical x; the coarse part is a function of r.
class InitialCondition {
 public:
  static constexpr double kGaussianWidth = 0.5;
  static constexpr double kGaussianCenter = kTwoPi / 2.0;

  InitialCondition(InitialPreset preset, double epsilon,
                   std::optional<CorrectorTable> corrector = std::nullopt,
                   double amplitude = 1.0);

  InitialPreset preset() const noexcept { return preset_; }
  double epsilon() const noexcept { return epsilon_; }
  double amplitude() const noexcept { return amplitude_; }
  /// True when the mean part is the single mode sin(r).
  bool is_sine_mode() const noexcept { return preset_ != InitialPreset::Gaussian; }

  /// a(x, 0) on the fine grid.
  double displacement(double x) const;
  double velocity(double /*x*/) const noexcept { return 0.0; }

  /// Non-oscillating part b0(r, 0).
  double coarse(double r) const;
  double coarse_gradient(double r) const;

 private:
  InitialPreset preset_;
  double epsilon_;
  std::optional<CorrectorTable> corrector_;
  double amplitude_;
};

/// WellPrepared requires a corrector (Error(MissingCorrector) otherwise):
/// a(x, 0) = sin(eps x) + eps chi(x) cos(eps x).
InitialCondition make_initial_condition(InitialPreset preset, double epsilon,
                                        std::optional<CorrectorTable> corrector = std::nullopt,
                                        double amplitude = 1.0);

}  // namespace homog1d
