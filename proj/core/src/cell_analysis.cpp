#include "homog1d/cell_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "homog1d/csv.hpp"
#include "homog1d/errors.hpp"

namespace homog1d {

double EffectiveModel::wave_speed() const { return std::sqrt(coeff_eff / rho_bar); }

CorrectorTable::CorrectorTable(std::vector<double> chi, double closure_defect)
    : chi_(std::move(chi)), closure_defect_(closure_defect) {
  if (chi_.size() < 4) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("corrector grid needs at least 4 nodes, got {}", chi_.size()));
  }
}

double CorrectorTable::evaluate(double xi) const {
  const std::size_t n = chi_.size();
  const double u = wrap_period(xi) / spacing();
  const double cell = std::floor(u);
  const double frac = u - cell;
  const std::size_t j = static_cast<std::size_t>(cell) % n;
  return (1.0 - frac) * chi_[j] + frac * chi_[(j + 1) % n];
}

double CorrectorTable::mean() const {
  return std::accumulate(chi_.begin(), chi_.end(), 0.0) / static_cast<double>(chi_.size());
}

double effective_coefficient(const PeriodicField& coeff, Quadrature quad) {
  const Quadrature q = resolve_quadrature(coeff, quad);
  const PeriodicField compliance = reciprocal_field(coeff, q);
  return 1.0 / average(compliance, q);
}

EffectiveModel build_effective_model(const PeriodicField& rho, const PeriodicField& coeff,
                                     EquationKind kind, Quadrature quad) {
  EffectiveModel model;
  model.equation_kind = kind;
  model.quad_used = resolve_quadrature(coeff, quad);
  model.coeff_eff = effective_coefficient(coeff, quad);
  model.rho_bar = kind == EquationKind::Wave ? average(rho, resolve_quadrature(rho, quad)) : 1.0;
  return model;
}

CorrectorTable build_corrector(const PeriodicField& coeff, Quadrature quad,
                               std::size_t grid_size) {
  if (grid_size < 4) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("corrector grid needs at least 4 nodes, got {}", grid_size));
  }
  const std::size_t base = resolve_quadrature(coeff, quad).sample_count();
  const std::size_t per_cell = (base + grid_size - 1) / grid_size;
  const Quadrature q(per_cell * grid_size);

  std::vector<double> compliance(q.sample_count());
  for (std::size_t j = 0; j < compliance.size(); ++j) {
    const double e = coeff.evaluate(q.node(j));
    if (!(e > 0.0)) {
      throw Error(ErrorCode::PositivityViolation,
                  fmt::format("coefficient {} at xi={} is not strictly positive", e, q.node(j)));
    }
    compliance[j] = 1.0 / e;
  }
  std::vector<double> chi(grid_size, 0.0);
  const auto [lo, hi] = std::minmax_element(compliance.begin(), compliance.end());
  if (*lo == *hi) return CorrectorTable(std::move(chi), 0.0);

  const double m_bar = std::accumulate(compliance.begin(), compliance.end(), 0.0) /
                       static_cast<double>(compliance.size());
  double running = 0.0;
  double magnitude = 0.0;
  const double h = q.spacing();
  for (std::size_t j = 0; j < compliance.size(); ++j) {
    const double slope = compliance[j] / m_bar - 1.0;
    running += slope * h;
    magnitude += std::abs(slope) * h;
    const std::size_t next = j + 1;
    if (next % per_cell == 0 && next / per_cell < grid_size) chi[next / per_cell] = running;
  }
  const double closure = magnitude > 0.0 ? std::abs(running) / magnitude : std::abs(running);

  const double shift = std::accumulate(chi.begin(), chi.end(), 0.0) / static_cast<double>(grid_size);
  for (double& c : chi) c -= shift;
  return CorrectorTable(std::move(chi), closure);
}

double identity_residual(const PeriodicField& coeff, Quadrature quad) {
  const Quadrature q = resolve_quadrature(coeff, quad);
  const std::size_t n = q.sample_count();
  std::vector<double> e(n);
  std::vector<double> m(n);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = coeff.evaluate(q.node(j));
    if (!(e[j] > 0.0)) {
      throw Error(ErrorCode::PositivityViolation,
                  fmt::format("coefficient {} at xi={} is not strictly positive", e[j], q.node(j)));
    }
    m[j] = 1.0 / e[j];
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  const double e_bar = std::accumulate(e.begin(), e.end(), 0.0) * inv_n;
  const double m_bar = std::accumulate(m.begin(), m.end(), 0.0) * inv_n;
  double cross = 0.0;
  for (std::size_t j = 0; j < n; ++j) cross += (e[j] - e_bar) * (m[j] - m_bar);
  cross *= inv_n;
  return std::abs(e_bar + cross / m_bar - 1.0 / m_bar);
}

std::vector<double> reconstruct_two_scale(const CorrectorTable& corrector,
                                          const std::function<double(double)>& coarse_solution,
                                          const std::function<double(double)>& coarse_gradient,
                                          double epsilon, std::span<const double> x_grid) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("reconstruction requires 0 < eps < 1, got {}", epsilon));
  }
  std::vector<double> out(x_grid.size());
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    const double x = x_grid[i];
    const double r = epsilon * x;
    out[i] = coarse_solution(r) + epsilon * corrector.evaluate(x) * coarse_gradient(r);
  }
  return out;
}

void write_corrector_csv(const CorrectorTable& corrector, const std::filesystem::path& path) {
  std::vector<double> xi(corrector.grid_size());
  for (std::size_t j = 0; j < xi.size(); ++j) xi[j] = corrector.node(j);
  const auto chi = corrector.chi();
  write_csv(path, {"xi", "chi"}, {xi, std::vector<double>(chi.begin(), chi.end())});
}

}  // namespace homog1d
