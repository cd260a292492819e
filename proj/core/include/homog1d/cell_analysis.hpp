#pragma once

// Effective (homogenized) constants and the first-order cell corrector.
//
// For a coefficient E(xi) with compliance M = 1/E the homogenized coefficient
// is the harmonic mean E_eff = <M>^-1, and the oscillating part of the first
// correction is chi(xi) * d(b0)/dr with chi' = (M - <M>) / <M>, <chi> = 0.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include "homog1d/periodic_field.hpp"

namespace homog1d {

enum class EquationKind { Wave, Diffusion };

struct EffectiveModel {
  double rho_bar = 1.0;
  double coeff_eff = 1.0;
  EquationKind equation_kind = EquationKind::Wave;
  Quadrature quad_used{};

  /// Phase speed sqrt(coeff_eff / rho_bar) of the homogenized wave equation.
  double wave_speed() const;

  bool operator==(const EffectiveModel&) const = default;
};

class CorrectorTable {
 public:
  /// `chi` holds samples at xi_j = 2*pi*j/chi.size(); at least 4 required.
  explicit CorrectorTable(std::vector<double> chi, double closure_defect = 0.0);

  std::size_t grid_size() const noexcept { return chi_.size(); }
  std::span<const double> chi() const noexcept { return chi_; }
  double spacing() const noexcept { return kTwoPi / static_cast<double>(chi_.size()); }
  double node(std::size_t j) const noexcept { return static_cast<double>(j) * spacing(); }

  /// Linear interpolation with periodic wraparound.
  double evaluate(double xi) const;

  /// |integral of M~/M_bar over one period| relative to the integral of its
  /// magnitude; zero up to round-off when the table closes periodically.
  double closure_defect() const noexcept { return closure_defect_; }

  double mean() const;

 private:
  std::vector<double> chi_;
  double closure_defect_;
};

double effective_coefficient(const PeriodicField& coeff, Quadrature quad = {});

/// Wave: rho_bar = <rho>. Diffusion has no density; rho_bar is fixed to 1
/// and `rho` is ignored.
EffectiveModel build_effective_model(const PeriodicField& rho, const PeriodicField& coeff,
                                     EquationKind kind, Quadrature quad = {});

/// Integrates chi' = M/M_bar - 1 with cumulative midpoint sums from xi = 0 and
/// shifts the result to zero mean. The integration uses at least
/// `quad.sample_count()` nodes, rounded up to a multiple of `grid_size`, and
/// M_bar is taken over the same nodes so the table closes exactly.
CorrectorTable build_corrector(const PeriodicField& coeff, Quadrature quad = {},
                               std::size_t grid_size = 1024);

/// |E_bar + <E~ M~>/M_bar - 1/M_bar|, every average taken by quadrature.
double identity_residual(const PeriodicField& coeff, Quadrature quad = {});

/// a(x) = b0(eps*x) + eps * chi(x) * b0_r(eps*x); the undetermined mean part
/// of the first correction is taken as zero.
std::vector<double> reconstruct_two_scale(const CorrectorTable& corrector,
                                          const std::function<double(double)>& coarse_solution,
                                          const std::function<double(double)>& coarse_gradient,
                                          double epsilon, std::span<const double> x_grid);

/// CSV with header `xi,chi`.
void write_corrector_csv(const CorrectorTable& corrector, const std::filesystem::path& path);

}  // namespace homog1d
