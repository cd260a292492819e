#include "homog1d/fine_solver.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "homog1d/csv.hpp"
#include "homog1d/errors.hpp"
#include "schedule.hpp"

namespace homog1d {

namespace {

void require_positive(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!(v > 0.0)) {
      throw Error(ErrorCode::PositivityViolation,
                  fmt::format("{} sample {} is not strictly positive", what, v));
    }
  }
}

double min_of(std::span<const double> v) { return *std::min_element(v.begin(), v.end()); }
double max_of(std::span<const double> v) { return *std::max_element(v.begin(), v.end()); }

void validate_cfl(double value, const char* name) {
  if (!(value > 0.0 && value <= 0.9)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("{} must lie in (0, 0.9], got {}", name, value));
  }
}

[[noreturn]] void unstable(std::size_t step, double t) {
  throw Error(ErrorCode::UnstableRun,
              fmt::format("solution became non-finite at step {} (t = {})", step, t));
}

}  // namespace

Grid1D::Grid1D(double epsilon, std::size_t points_per_period)
    : epsilon_(epsilon), cells_(0), points_per_period_(points_per_period) {
  if (!(epsilon > 0.0 && epsilon <= 0.25)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("eps must lie in (0, 1/4], got {}", epsilon));
  }
  const double inv = 1.0 / epsilon;
  const double cells = std::round(inv);
  if (std::abs(inv - cells) > 1e-9 * inv) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("1/eps must be an integer number of cells, got {}", inv));
  }
  if (points_per_period < 4) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("points_per_period must be >= 4, got {}", points_per_period));
  }
  cells_ = static_cast<std::size_t>(cells);
}

std::vector<double> Grid1D::nodes() const {
  std::vector<double> x(n_total());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = this->x(i);
  return x;
}

FluxOperator::FluxOperator(std::vector<double> face_coefficients, double h)
    : faces_(std::move(face_coefficients)), h_(h) {
  if (faces_.size() < 3) throw Error(ErrorCode::InvalidArgument, "flux operator needs >= 3 nodes");
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid spacing must be positive");
}

void FluxOperator::apply(std::span<const double> a, std::span<double> out) const {
  const std::size_t n = faces_.size();
  const double inv_h2 = 1.0 / (h_ * h_);
  double flux_left = faces_[n - 1] * (a[0] - a[n - 1]);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double flux_right = faces_[i] * (a[i + 1] - a[i]);
    out[i] = (flux_right - flux_left) * inv_h2;
    flux_left = flux_right;
  }
  out[n - 1] = (faces_[n - 1] * (a[0] - a[n - 1]) - flux_left) * inv_h2;
}

LeapfrogStepper::LeapfrogStepper(FluxOperator op, std::vector<double> mass, double dt,
                                 std::span<const double> a0, std::span<const double> v0)
    : op_(std::move(op)), mass_(std::move(mass)), dt_(dt) {
  const std::size_t n = op_.size();
  if (mass_.size() != n || a0.size() != n || v0.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "leapfrog state sizes disagree");
  }
  dt2_over_mass_.resize(n);
  for (std::size_t i = 0; i < n; ++i) dt2_over_mass_[i] = dt * dt / mass_[i];
  current_.assign(a0.begin(), a0.end());
  scratch_.resize(n);
  op_.apply(current_, scratch_);
  previous_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    previous_[i] = a0[i] - dt * v0[i] + 0.5 * dt2_over_mass_[i] * scratch_[i];
  }
}

void LeapfrogStepper::step() {
  op_.apply(current_, scratch_);
  const std::size_t n = current_.size();
  for (std::size_t i = 0; i < n; ++i) {
    previous_[i] = 2.0 * current_[i] - previous_[i] + dt2_over_mass_[i] * scratch_[i];
  }
  previous_.swap(current_);
}

double LeapfrogStepper::energy() const {
  const std::size_t n = current_.size();
  const double h = op_.h();
  const auto faces = op_.faces();
  const double inv_dt = 1.0 / dt_;
  const double inv_h2 = 1.0 / (h * h);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + 1 == n ? 0 : i + 1;
    const double v = (current_[i] - previous_[i]) * inv_dt;
    const double strain = (previous_[j] - previous_[i]) * (current_[j] - current_[i]) * inv_h2;
    sum += 0.5 * mass_[i] * v * v + 0.5 * faces[i] * strain;
  }
  return sum * h;
}

double SimulationResult::max_relative_drift() const {
  if (diagnostics.empty()) return 0.0;
  const double d0 = diagnostics.front();
  const double denom = std::abs(d0) + diagnostic_scale;
  double worst = 0.0;
  for (double d : diagnostics) worst = std::max(worst, std::abs(d - d0));
  if (denom == 0.0) return worst == 0.0 ? 0.0 : INFINITY;
  return worst / denom;
}

std::vector<double> sample_nodes(const PeriodicField& field, const Grid1D& grid) {
  const std::size_t p = grid.points_per_period();
  std::vector<double> cell(p);
  for (std::size_t i = 0; i < p; ++i) cell[i] = field.evaluate(grid.x(i));
  std::vector<double> out(grid.n_total());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = cell[i % p];
  return out;
}

std::vector<double> sample_faces(const PeriodicField& field, const Grid1D& grid) {
  const std::size_t p = grid.points_per_period();
  std::vector<double> cell(p);
  for (std::size_t i = 0; i < p; ++i) cell[i] = field.evaluate((static_cast<double>(i) + 0.5) * grid.h());
  std::vector<double> out(grid.n_total());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = cell[i % p];
  return out;
}

double wave_time_step_bound(const PeriodicField& rho, const PeriodicField& modulus,
                            const Grid1D& grid, double cfl) {
  validate_cfl(cfl, "cfl");
  const auto r = sample_nodes(rho, grid);
  const auto e = sample_faces(modulus, grid);
  require_positive(r, "density");
  require_positive(e, "modulus");
  return cfl * grid.h() * grid.epsilon() * std::sqrt(min_of(r) / max_of(e));
}

double diffusion_time_step_bound(const PeriodicField& conductivity, const Grid1D& grid,
                                 double safety) {
  validate_cfl(safety, "safety");
  const auto k = sample_faces(conductivity, grid);
  require_positive(k, "conductivity");
  return safety * grid.h() * grid.h() / (2.0 * max_of(k));
}

SimulationResult solve_fine_wave(const PeriodicField& rho, const PeriodicField& modulus,
                                 const Grid1D& grid, const InitialCondition& ic, double t_end,
                                 std::span<const double> output_times, WaveOptions options) {
  const double bound = wave_time_step_bound(rho, modulus, grid, options.cfl);
  const auto plan =
      detail::plan_steps(t_end, bound, options.requested_dt, options.enforce_stability);
  const auto schedule = detail::output_steps(output_times, plan, t_end);

  const double eps2 = grid.epsilon() * grid.epsilon();
  std::vector<double> mass = sample_nodes(rho, grid);
  for (double& m : mass) m *= eps2;

  const auto x = grid.nodes();
  std::vector<double> a0(x.size());
  std::vector<double> v0(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    a0[i] = ic.displacement(x[i]);
    v0[i] = ic.velocity(x[i]);
  }

  LeapfrogStepper stepper(FluxOperator(sample_faces(modulus, grid), grid.h()), std::move(mass),
                          plan.dt, a0, v0);

  SimulationResult result{.grid = grid};
  result.dt = plan.dt;
  result.steps = plan.steps;
  result.dt_reduced = plan.reduced;
  result.requested_dt = options.requested_dt;
  result.diagnostics.reserve(plan.steps + 1);
  result.diagnostics.push_back(stepper.energy());

  std::size_t next_out = 0;
  auto record = [&](std::size_t k) {
    while (next_out < schedule.size() && schedule[next_out] == k) {
      result.times.push_back(static_cast<double>(k) * plan.dt);
      const auto cur = stepper.current();
      result.snapshots.emplace_back(cur.begin(), cur.end());
      ++next_out;
    }
  };
  record(0);
  for (std::size_t k = 1; k <= plan.steps; ++k) {
    stepper.step();
    const double h = stepper.energy();
    if (!std::isfinite(h)) unstable(k, static_cast<double>(k) * plan.dt);
    result.diagnostics.push_back(h);
    record(k);
  }
  return result;
}

SimulationResult solve_fine_diffusion(const PeriodicField& conductivity, const Grid1D& grid,
                                      const InitialCondition& ic, double t_end,
                                      std::span<const double> output_times,
                                      DiffusionOptions options) {
  const double bound = diffusion_time_step_bound(conductivity, grid, options.safety);
  const auto plan =
      detail::plan_steps(t_end, bound, options.requested_dt, options.enforce_stability);
  const auto schedule = detail::output_steps(output_times, plan, t_end);

  const auto faces = sample_faces(conductivity, grid);
  const std::size_t n = grid.n_total();
  const double h = grid.h();
  const double ratio = plan.dt / (h * h);

  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = ic.displacement(grid.x(i));

  auto total_mass = [&] {
    double s = 0.0;
    for (double v : a) s += v;
    return s * h;
  };

  SimulationResult result{.grid = grid};
  result.dt = plan.dt;
  result.steps = plan.steps;
  result.dt_reduced = plan.reduced;
  result.requested_dt = options.requested_dt;
  {
    double l1 = 0.0;
    for (double v : a) l1 += std::abs(v);
    result.diagnostic_scale = l1 * h;
  }
  result.diagnostics.reserve(plan.steps + 1);
  result.diagnostics.push_back(total_mass());

  std::size_t next_out = 0;
  auto record = [&](std::size_t k) {
    while (next_out < schedule.size() && schedule[next_out] == k) {
      result.times.push_back(static_cast<double>(k) * plan.dt);
      result.snapshots.push_back(a);
      ++next_out;
    }
  };
  record(0);
  for (std::size_t k = 1; k <= plan.steps; ++k) {
    // In-place sweep: the wraparound flux uses the old a[0], so take it first.
    const double wrap_flux = faces[n - 1] * (a[0] - a[n - 1]);
    double flux_left = wrap_flux;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double flux_right = faces[i] * (a[i + 1] - a[i]);
      a[i] += ratio * (flux_right - flux_left);
      flux_left = flux_right;
    }
    a[n - 1] += ratio * (wrap_flux - flux_left);

    const double m = total_mass();
    if (!std::isfinite(m)) unstable(k, static_cast<double>(k) * plan.dt);
    result.diagnostics.push_back(m);
    record(k);
  }
  return result;
}

std::vector<std::filesystem::path> write_snapshots(const std::vector<std::vector<double>>& snapshots,
                                                   std::span<const double> axis,
                                                   const std::filesystem::path& dir,
                                                   const std::string& tag,
                                                   const std::string& axis_name) {
  std::vector<std::filesystem::path> paths;
  const std::vector<double> axis_copy(axis.begin(), axis.end());
  for (std::size_t k = 0; k < snapshots.size(); ++k) {
    auto path = dir / fmt::format("{}_t{}.csv", tag, k);
    write_csv(path, {axis_name, "value"}, {axis_copy, snapshots[k]});
    paths.push_back(std::move(path));
  }
  return paths;
}

}  // namespace homog1d
