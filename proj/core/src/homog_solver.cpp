#include "homog1d/homog_solver.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "homog1d/errors.hpp"
#include "homog1d/fine_solver.hpp"
#include "schedule.hpp"

namespace homog1d {

namespace {

void require_kind(const EffectiveModel& model, EquationKind expected) {
  if (model.equation_kind != expected) {
    throw Error(ErrorCode::KindMismatch,
                expected == EquationKind::Wave
                    ? "wave solver called with a diffusion model"
                    : "diffusion solver called with a wave model");
  }
}

void require_points(std::size_t r_points) {
  if (r_points < 8) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("r_points must be >= 8, got {}", r_points));
  }
}

std::vector<double> uniform_r(std::size_t n) {
  std::vector<double> r(n);
  const double dr = kTwoPi / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) r[j] = static_cast<double>(j) * dr;
  return r;
}

/// Fourth-order centered derivative on a periodic grid.
std::vector<double> periodic_derivative(std::span<const double> v, double dr) {
  const std::size_t n = v.size();
  std::vector<double> d(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double m2 = v[(j + n - 2) % n];
    const double m1 = v[(j + n - 1) % n];
    const double p1 = v[(j + 1) % n];
    const double p2 = v[(j + 2) % n];
    d[j] = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * dr);
  }
  return d;
}

CoarseSolution closed_form(const EffectiveModel& model, const InitialCondition& ic,
                           std::size_t r_points, std::span<const double> times,
                           double (*amplitude)(const EffectiveModel&, double)) {
  CoarseSolution sol;
  sol.model = model;
  sol.exact = true;
  sol.r = uniform_r(r_points);
  double last = -1.0;
  for (double t : times) {
    if (!(t >= 0.0) || t <= last) {
      throw Error(ErrorCode::InvalidArgument, "output times must be nonnegative and increasing");
    }
    last = t;
    const double a = ic.amplitude() * amplitude(model, t);
    std::vector<double> v(r_points);
    std::vector<double> g(r_points);
    for (std::size_t j = 0; j < r_points; ++j) {
      v[j] = a * std::sin(sol.r[j]);
      g[j] = a * std::cos(sol.r[j]);
    }
    sol.times.push_back(t);
    sol.mode_amplitudes.push_back(a);
    sol.values.push_back(std::move(v));
    sol.gradient_values.push_back(std::move(g));
  }
  return sol;
}

void check_output_window(std::span<const double> times, double t_end) {
  for (double t : times) {
    if (t > t_end * (1.0 + 1e-12) + 1e-15) {
      throw Error(ErrorCode::InvalidArgument,
                  fmt::format("output time {} exceeds end time {}", t, t_end));
    }
  }
}

}  // namespace

double CoarseSolution::sample(std::size_t k, double r_value) const {
  if (exact) return mode_amplitudes[k] * std::sin(r_value);
  const auto& v = values[k];
  const auto& g = gradient_values[k];
  const std::size_t n = v.size();
  const double dr = spacing();
  const double u = wrap_period(r_value) / dr;
  const double cell = std::floor(u);
  const double s = u - cell;
  const std::size_t j = static_cast<std::size_t>(cell) % n;
  const std::size_t jp = (j + 1) % n;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * v[j] + (s3 - 2 * s2 + s) * dr * g[j] +
         (-2 * s3 + 3 * s2) * v[jp] + (s3 - s2) * dr * g[jp];
}

double CoarseSolution::sample_gradient(std::size_t k, double r_value) const {
  if (exact) return mode_amplitudes[k] * std::cos(r_value);
  const auto& v = values[k];
  const auto& g = gradient_values[k];
  const std::size_t n = v.size();
  const double dr = spacing();
  const double u = wrap_period(r_value) / dr;
  const double cell = std::floor(u);
  const double s = u - cell;
  const std::size_t j = static_cast<std::size_t>(cell) % n;
  const std::size_t jp = (j + 1) % n;
  const double s2 = s * s;
  return ((6 * s2 - 6 * s) * v[j] + (-6 * s2 + 6 * s) * v[jp]) / dr +
         (3 * s2 - 4 * s + 1) * g[j] + (3 * s2 - 2 * s) * g[jp];
}

double CoarseSolution::max_relative_drift() const {
  if (diagnostics.empty()) return 0.0;
  const double d0 = diagnostics.front();
  double worst = 0.0;
  for (double d : diagnostics) worst = std::max(worst, std::abs(d - d0));
  if (d0 == 0.0) return worst;
  return worst / std::abs(d0);
}

CoarseSolution solve_homog_wave(const EffectiveModel& model, const InitialCondition& ic,
                                double t_end, std::size_t r_points,
                                std::span<const double> output_times, CoarseOptions options) {
  require_kind(model, EquationKind::Wave);
  require_points(r_points);
  check_output_window(output_times, t_end);

  if (ic.is_sine_mode() && !options.force_numerical) {
    auto sol = closed_form(model, ic, r_points, output_times,
                           [](const EffectiveModel& m, double t) { return std::cos(m.wave_speed() * t); });
    const double e = 0.5 * std::numbers::pi * ic.amplitude() * ic.amplitude() * model.coeff_eff;
    sol.diagnostics.assign(sol.times.size(), e);
    return sol;
  }

  const double dr = kTwoPi / static_cast<double>(r_points);
  const double bound = options.cfl * dr * std::sqrt(model.rho_bar / model.coeff_eff);
  const auto plan = detail::plan_steps(t_end, bound, std::nullopt);
  const auto schedule = detail::output_steps(output_times, plan, t_end);

  CoarseSolution sol;
  sol.model = model;
  sol.r = uniform_r(r_points);
  std::vector<double> b0(r_points);
  for (std::size_t j = 0; j < r_points; ++j) b0[j] = ic.coarse(sol.r[j]);
  const std::vector<double> v0(r_points, 0.0);
  LeapfrogStepper stepper(FluxOperator(std::vector<double>(r_points, model.coeff_eff), dr),
                          std::vector<double>(r_points, model.rho_bar), plan.dt, b0, v0);
  sol.diagnostics.push_back(stepper.energy());

  std::size_t next = 0;
  auto record = [&](std::size_t k) {
    while (next < schedule.size() && schedule[next] == k) {
      const auto cur = stepper.current();
      sol.times.push_back(static_cast<double>(k) * plan.dt);
      sol.values.emplace_back(cur.begin(), cur.end());
      sol.gradient_values.push_back(periodic_derivative(cur, dr));
      ++next;
    }
  };
  record(0);
  for (std::size_t k = 1; k <= plan.steps; ++k) {
    stepper.step();
    const double e = stepper.energy();
    if (!std::isfinite(e)) {
      throw Error(ErrorCode::UnstableRun, fmt::format("coarse wave run non-finite at step {}", k));
    }
    sol.diagnostics.push_back(e);
    record(k);
  }
  return sol;
}

CoarseSolution solve_homog_diffusion(const EffectiveModel& model, const InitialCondition& ic,
                                     double tau_end, std::size_t r_points,
                                     std::span<const double> output_times,
                                     CoarseOptions options) {
  require_kind(model, EquationKind::Diffusion);
  require_points(r_points);
  check_output_window(output_times, tau_end);

  if (ic.is_sine_mode() && !options.force_numerical) {
    auto sol = closed_form(model, ic, r_points, output_times,
                           [](const EffectiveModel& m, double tau) { return std::exp(-m.coeff_eff * tau); });
    sol.diagnostics.assign(sol.times.size(), 0.0);
    return sol;
  }

  const double dr = kTwoPi / static_cast<double>(r_points);
  const double bound = options.safety * dr * dr / (2.0 * model.coeff_eff);
  const auto plan = detail::plan_steps(tau_end, bound, std::nullopt);
  const auto schedule = detail::output_steps(output_times, plan, tau_end);

  CoarseSolution sol;
  sol.model = model;
  sol.r = uniform_r(r_points);
  std::vector<double> b(r_points);
  for (std::size_t j = 0; j < r_points; ++j) b[j] = ic.coarse(sol.r[j]);
  const FluxOperator op(std::vector<double>(r_points, model.coeff_eff), dr);
  std::vector<double> rate(r_points);

  auto mass = [&] {
    double s = 0.0;
    for (double v : b) s += v;
    return s * dr;
  };
  sol.diagnostics.push_back(mass());

  std::size_t next = 0;
  auto record = [&](std::size_t k) {
    while (next < schedule.size() && schedule[next] == k) {
      sol.times.push_back(static_cast<double>(k) * plan.dt);
      sol.values.push_back(b);
      sol.gradient_values.push_back(periodic_derivative(b, dr));
      ++next;
    }
  };
  record(0);
  for (std::size_t k = 1; k <= plan.steps; ++k) {
    op.apply(b, rate);
    for (std::size_t j = 0; j < r_points; ++j) b[j] += plan.dt * rate[j];
    const double m = mass();
    if (!std::isfinite(m)) {
      throw Error(ErrorCode::UnstableRun, fmt::format("coarse diffusion run non-finite at step {}", k));
    }
    sol.diagnostics.push_back(m);
    record(k);
  }
  return sol;
}

}  // namespace homog1d
