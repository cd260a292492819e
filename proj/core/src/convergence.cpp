#include "homog1d/convergence.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <thread>

#include <fmt/format.h>

#include "homog1d/csv.hpp"
#include "homog1d/errors.hpp"
#include "homog1d/homog_solver.hpp"

namespace homog1d {

namespace {

constexpr std::size_t kWaveFitSamples = 400;
constexpr double kWaveFitPeriods = 2.0;

InitialCondition make_ic(const SweepConfig& config, double epsilon) {
  std::optional<CorrectorTable> corrector;
  if (config.ic == InitialPreset::WellPrepared) {
    corrector = build_corrector(config.coeff, config.quad, config.corrector_grid);
  }
  return make_initial_condition(config.ic, epsilon, std::move(corrector));
}

Comparison compare_impl(const SweepConfig& config, const EffectiveModel& model,
                        const CorrectorTable& corrector, double epsilon) {
  Comparison cmp;
  CaseOutcome& out = cmp.outcome;
  out.epsilon = epsilon;
  const Grid1D grid(epsilon, config.points_per_period);
  const InitialCondition ic = make_ic(config, epsilon);

  SimulationResult fine = [&] {
    if (config.equation == EquationKind::Wave) {
      const double t_end = config.comparison_time;
      const double times[] = {t_end};
      return solve_fine_wave(config.rho, config.coeff, grid, ic, t_end, times,
                             WaveOptions{.cfl = config.cfl});
    }
    const double t_end = config.comparison_time / (epsilon * epsilon);
    const double times[] = {t_end};
    return solve_fine_diffusion(config.coeff, grid, ic, t_end, times,
                                DiffusionOptions{.safety = config.safety});
  }();
  out.conservation_drift = fine.max_relative_drift();

  const double reached = fine.times.back();
  const double coarse_time =
      config.equation == EquationKind::Wave ? reached : reached * epsilon * epsilon;
  out.comparison_time = coarse_time;
  const double coarse_times[] = {coarse_time};
  const CoarseSolution coarse =
      config.equation == EquationKind::Wave
          ? solve_homog_wave(model, ic, coarse_time, config.r_points, coarse_times)
          : solve_homog_diffusion(model, ic, coarse_time, config.r_points, coarse_times);

  cmp.x = grid.nodes();
  cmp.plain.resize(cmp.x.size());
  for (std::size_t i = 0; i < cmp.x.size(); ++i) cmp.plain[i] = coarse.sample(0, epsilon * cmp.x[i]);
  cmp.corrected = reconstruct_two_scale(
      corrector, [&](double r) { return coarse.sample(0, r); },
      [&](double r) { return coarse.sample_gradient(0, r); }, epsilon, cmp.x);
  cmp.fine = std::move(fine.snapshots.back());

  out.err_plain = l2_relative_error(cmp.fine, cmp.plain, grid.h());
  out.err_corrected = l2_relative_error(cmp.fine, cmp.corrected, grid.h());
  return cmp;
}

CaseOutcome run_case(const SweepConfig& config, const EffectiveModel& model,
                     const CorrectorTable& corrector, double epsilon) {
  try {
    return compare_impl(config, model, corrector, epsilon).outcome;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnstableRun) throw;
    CaseOutcome out;
    out.epsilon = epsilon;
    out.failure = e.what();
    return out;
  }
}

struct FitOutcome {
  double constant = 0.0;
  double drift = 0.0;
};

FitOutcome run_fit(const SweepConfig& config, const EffectiveModel& model) {
  const Grid1D grid(config.fit_epsilon, config.points_per_period);
  const InitialCondition ic = make_ic(config, config.fit_epsilon);
  FitOutcome fit;
  if (config.equation == EquationKind::Wave) {
    const double t_end = kWaveFitPeriods * kTwoPi / model.wave_speed();
    std::vector<double> times(kWaveFitSamples + 1);
    for (std::size_t k = 0; k < times.size(); ++k) {
      times[k] = t_end * static_cast<double>(k) / static_cast<double>(kWaveFitSamples);
    }
    const auto fine = solve_fine_wave(config.rho, config.coeff, grid, ic, t_end, times,
                                      WaveOptions{.cfl = config.cfl});
    const double c = fit_wave_speed(fine);
    fit.constant = model.rho_bar * c * c;
    fit.drift = fine.max_relative_drift();
  } else {
    const double eps2 = config.fit_epsilon * config.fit_epsilon;
    const double t_end = config.comparison_time / eps2;
    const double times[] = {0.0, t_end};
    const auto fine = solve_fine_diffusion(config.coeff, grid, ic, t_end, times,
                                           DiffusionOptions{.safety = config.safety});
    fit.constant = fit_decay_rate(fine);
    fit.drift = fine.max_relative_drift();
  }
  return fit;
}

void run_parallel(std::size_t tasks, std::size_t threads,
                  const std::function<void(std::size_t)>& body) {
  threads = std::max<std::size_t>(1, std::min(threads, tasks));
  if (threads == 1) {
    for (std::size_t i = 0; i < tasks; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < tasks; i = next++) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::size_t resolve_thread_count(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HOMOG1D_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::string> preset_names() {
  return {"wave-constant",      "wave-cosine",      "wave-twophase",
          "diffusion-constant", "diffusion-cosine", "diffusion-twophase"};
}

SweepConfig preset_sweep(std::string_view name) {
  SweepConfig config;
  const auto dash = name.find('-');
  if (dash == std::string_view::npos) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("unknown sweep preset '{}'", name));
  }
  const auto equation = name.substr(0, dash);
  const auto medium = name.substr(dash + 1);
  if (equation == "wave") {
    config.equation = EquationKind::Wave;
    config.comparison_time = 1.0;
  } else if (equation == "diffusion") {
    config.equation = EquationKind::Diffusion;
    config.comparison_time = 0.5;
  } else {
    throw Error(ErrorCode::InvalidArgument, fmt::format("unknown sweep preset '{}'", name));
  }
  if (medium == "constant") {
    config.coeff = PeriodicField::constant(2.0);
  } else if (medium == "cosine") {
    config.coeff = PeriodicField::cosine(2.0, 1.0);
  } else if (medium == "twophase") {
    config.coeff = PeriodicField::two_phase(1.0, 4.0, 0.5);
  } else {
    throw Error(ErrorCode::InvalidArgument, fmt::format("unknown sweep preset '{}'", name));
  }
  return config;
}

Comparison compare_at(const SweepConfig& config, double epsilon) {
  const EffectiveModel model =
      build_effective_model(config.rho, config.coeff, config.equation, config.quad);
  const CorrectorTable corrector =
      build_corrector(config.coeff, config.quad, config.corrector_grid);
  return compare_impl(config, model, corrector, epsilon);
}

ConvergenceReport run_sweep(const SweepConfig& config) {
  if (!(config.comparison_time > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "comparison time must be positive");
  }
  for (double eps : config.epsilons) {
    const double inv = 1.0 / eps;
    if (!(eps > 0.0) || std::abs(inv - std::round(inv)) > 1e-9 * inv) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("1/eps must be integral, got eps={}", eps));
    }
  }

  const EffectiveModel model =
      build_effective_model(config.rho, config.coeff, config.equation, config.quad);
  const CorrectorTable corrector =
      build_corrector(config.coeff, config.quad, config.corrector_grid);

  const std::size_t n = config.epsilons.size();
  std::vector<CaseOutcome> cases(n);
  FitOutcome fit;
  run_parallel(n + 1, resolve_thread_count(config.threads), [&](std::size_t i) {
    if (i < n) {
      cases[i] = run_case(config, model, corrector, config.epsilons[i]);
    } else {
      fit = run_fit(config, model);
    }
  });

  ConvergenceReport report;
  report.cases = cases;
  report.expected_constant = model.coeff_eff;
  report.fitted_constant = fit.constant;
  report.fit_conservation_drift = fit.drift;
  std::vector<double> eps_ok;
  std::vector<double> plain_ok;
  std::vector<double> corrected_ok;
  for (const auto& c : cases) {
    report.epsilons.push_back(c.epsilon);
    report.err_plain.push_back(c.ok() ? c.err_plain : NAN);
    report.err_corrected.push_back(c.ok() ? c.err_corrected : NAN);
    if (c.ok()) {
      eps_ok.push_back(c.epsilon);
      plain_ok.push_back(c.err_plain);
      corrected_ok.push_back(c.err_corrected);
    }
  }
  if (eps_ok.size() < 3) {
    throw Error(ErrorCode::InsufficientData,
                fmt::format("only {} eps case(s) survived; need 3 to fit a rate", eps_ok.size()));
  }
  report.rate_plain = fit_log_log_slope(eps_ok, plain_ok);
  report.rate_corrected = fit_log_log_slope(eps_ok, corrected_ok);
  return report;
}

double fit_log_log_slope(std::span<const double> epsilons, std::span<const double> errors) {
  if (epsilons.size() != errors.size() || epsilons.size() < 2) {
    throw Error(ErrorCode::InsufficientData, "slope fit needs >= 2 congruent points");
  }
  const double n = static_cast<double>(epsilons.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    const double lx = std::log(epsilons[i]);
    const double ly = std::log(std::max(errors[i], 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw Error(ErrorCode::InsufficientData, "slope fit needs distinct eps values");
  return (n * sxy - sx * sy) / denom;
}

double l2_relative_error(std::span<const double> fine, std::span<const double> reference, double h) {
  if (fine.size() != reference.size()) {
    throw Error(ErrorCode::InvalidArgument, "l2 error of arrays with different lengths");
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < fine.size(); ++i) {
    const double d = fine[i] - reference[i];
    num += d * d;
    den += reference[i] * reference[i];
  }
  if (den == 0.0) throw Error(ErrorCode::DivisionGuard, "reference has zero norm");
  return std::sqrt(num * h) / std::sqrt(den * h);
}

std::vector<double> modal_amplitudes(const SimulationResult& result, double wavenumber) {
  const auto x = result.grid.nodes();
  const double half_length = 0.5 * result.grid.length();
  const double h = result.grid.h();
  std::vector<double> amps;
  amps.reserve(result.snapshots.size());
  for (const auto& snap : result.snapshots) {
    double s = 0.0;
    double c = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      s += snap[i] * std::sin(wavenumber * x[i]);
      c += snap[i] * std::cos(wavenumber * x[i]);
    }
    s *= h / half_length;
    c *= h / half_length;
    amps.push_back(std::hypot(s, c));
  }
  return amps;
}

double fit_decay_rate(const SimulationResult& result, std::optional<double> mode_wavenumber) {
  if (result.snapshots.size() < 2) {
    throw Error(ErrorCode::InsufficientData, "decay-rate fit needs at least 2 snapshots");
  }
  const double k = mode_wavenumber.value_or(result.grid.epsilon());
  const auto amps = modal_amplitudes(result, k);
  const double first = amps.front();
  const double last = amps.back();
  if (first < 1e-12 || last < 1e-12) {
    throw Error(ErrorCode::Underflow,
                fmt::format("modal amplitude {} fell below 1e-12; run is too long", std::min(first, last)));
  }
  const double span = result.times.back() - result.times.front();
  if (!(span > 0.0)) throw Error(ErrorCode::InsufficientData, "snapshots share a single time");
  return -std::log(last / first) / (k * k * span);
}

double fit_wave_speed(const SimulationResult& result) {
  const auto x = result.grid.nodes();
  const double k = result.grid.epsilon();
  double norm = 0.0;
  std::vector<double> basis(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    basis[i] = std::sin(k * x[i]);
    norm += basis[i] * basis[i];
  }
  std::vector<double> amp;
  amp.reserve(result.snapshots.size());
  for (const auto& snap : result.snapshots) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += snap[i] * basis[i];
    amp.push_back(s / norm);
  }

  std::vector<double> crossings;
  for (std::size_t j = 0; j + 1 < amp.size(); ++j) {
    const double a0 = amp[j];
    const double a1 = amp[j + 1];
    if (a0 == 0.0) {
      crossings.push_back(result.times[j]);
    } else if (a0 * a1 < 0.0) {
      const double t0 = result.times[j];
      const double t1 = result.times[j + 1];
      crossings.push_back(t0 - a0 * (t1 - t0) / (a1 - a0));
    }
  }
  if (crossings.size() < 2) {
    throw Error(ErrorCode::InsufficientData,
                fmt::format("found {} zero crossing(s); run longer than one period", crossings.size()));
  }
  const double half_period =
      (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
  return std::numbers::pi / half_period;
}

void write_report_csv(const ConvergenceReport& report, const std::filesystem::path& path) {
  ensure_parent_directory(path);
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, fmt::format("cannot write '{}'", path.string()));
  out << "epsilon,err_plain,err_corrected\n";
  for (std::size_t i = 0; i < report.epsilons.size(); ++i) {
    out << format_full(report.epsilons[i]) << ',' << format_full(report.err_plain[i]) << ','
        << format_full(report.err_corrected[i]) << '\n';
  }
  out << "rate_plain," << format_full(report.rate_plain) << '\n';
  out << "rate_corrected," << format_full(report.rate_corrected) << '\n';
  out << "fitted_constant," << format_full(report.fitted_constant) << '\n';
  if (!out) throw Error(ErrorCode::Io, fmt::format("write to '{}' failed", path.string()));
}

}  // namespace homog1d
