#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "homog1d/convergence.hpp"
#include "support.hpp"

namespace homog1d {
namespace {

SimulationResult synthetic(double eps, std::size_t p, const std::vector<double>& times,
                           const std::function<double(double x, double t)>& f) {
  SimulationResult r{.grid = Grid1D(eps, p)};
  const auto x = r.grid.nodes();
  for (double t : times) {
    std::vector<double> snap(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) snap[i] = f(x[i], t);
    r.times.push_back(t);
    r.snapshots.push_back(std::move(snap));
  }
  return r;
}

TEST(LogLogSlope, RecoversPowerLaw) {
  const std::vector<double> eps{0.125, 0.0625, 0.03125, 0.015625};
  std::vector<double> err;
  for (double e : eps) err.push_back(0.7 * std::pow(e, 1.5));
  EXPECT_NEAR(fit_log_log_slope(eps, err), 1.5, 1e-12);
  const std::vector<double> one{0.1};
  EXPECT_EQ(test::error_code_of([&] { fit_log_log_slope(one, one); }), ErrorCode::InsufficientData);
}

TEST(L2Error, Examples) {
  const std::vector<double> g{1.0, -2.0, 3.0};
  const std::vector<double> twice{2.0, -4.0, 6.0};
  const std::vector<double> zero(3, 0.0);
  EXPECT_EQ(l2_relative_error(g, g, 0.1), 0.0);
  EXPECT_NEAR(l2_relative_error(twice, g, 0.1), 1.0, 1e-15);
  EXPECT_NEAR(l2_relative_error(zero, g, 0.1), 1.0, 1e-15);
  EXPECT_EQ(test::error_code_of([&] { l2_relative_error(g, zero, 0.1); }), ErrorCode::DivisionGuard);
}

TEST(ModalAmplitudes, ProjectsOntoSineAndCosine) {
  const double eps = 0.125;
  const auto r = synthetic(eps, 32, {0.0},
                           [&](double x, double) { return 0.3 * std::sin(eps * x) + 0.4 * std::cos(eps * x); });
  EXPECT_NEAR(modal_amplitudes(r, eps)[0], 0.5, 1e-12);
  EXPECT_NEAR(modal_amplitudes(r, 2 * eps)[0], 0.0, 1e-12);
}

TEST(DecayRateFit, RecoversRate) {
  const double eps = 0.125;
  const double k_eff = 1.6;
  const double t_end = 0.5 / (eps * eps);
  const auto r = synthetic(eps, 32, {0.0, t_end}, [&](double x, double t) {
    return std::exp(-k_eff * eps * eps * t) * std::sin(eps * x);
  });
  EXPECT_NEAR(fit_decay_rate(r), k_eff, 1e-10);
}

TEST(DecayRateFit, Failures) {
  const double eps = 0.125;
  const auto tiny = synthetic(eps, 16, {0.0, 1.0}, [&](double x, double t) {
    return (t > 0 ? 1e-15 : 1.0) * std::sin(eps * x);
  });
  EXPECT_EQ(test::error_code_of([&] { fit_decay_rate(tiny); }), ErrorCode::Underflow);
  const auto single = synthetic(eps, 16, {0.0}, [&](double x, double) { return std::sin(eps * x); });
  EXPECT_EQ(test::error_code_of([&] { fit_decay_rate(single); }), ErrorCode::InsufficientData);
}

TEST(WaveSpeedFit, RecoversFrequency) {
  const double eps = 0.0625;
  const double omega = std::sqrt(std::sqrt(3.0));
  const double t_end = 2 * kTwoPi / omega;
  std::vector<double> times;
  for (int k = 0; k <= 400; ++k) times.push_back(t_end * k / 400.0);
  const auto r = synthetic(eps, 16, times, [&](double x, double t) {
    return std::sin(eps * x) * std::cos(omega * t) + 0.05 * std::sin(3 * eps * x);
  });
  EXPECT_NEAR(fit_wave_speed(r), omega, 1e-4 * omega);
  const auto short_run = synthetic(eps, 16, {0.0, 0.1}, [&](double x, double t) {
    return std::sin(eps * x) * std::cos(omega * t);
  });
  EXPECT_EQ(test::error_code_of([&] { fit_wave_speed(short_run); }), ErrorCode::InsufficientData);
}

TEST(Sweep, ConstantCoefficientHasNoCorrection) {
  auto cfg = preset_sweep("wave-constant");
  cfg.epsilons = {0.25, 0.125, 1.0 / 16};
  cfg.points_per_period = 32;
  const auto report = run_sweep(cfg);
  ASSERT_EQ(report.cases.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(report.err_plain[i], report.err_corrected[i], 1e-14);
  EXPECT_NEAR(report.fitted_constant, 2.0, 0.02 * 2.0);
}

TEST(Sweep, CosineWaveConvergesAtFirstOrder) {
  auto cfg = preset_sweep("wave-cosine");
  const auto report = run_sweep(cfg);
  ASSERT_EQ(report.epsilons.size(), 4u);
  EXPECT_GE(report.rate_plain, 0.8);
  EXPECT_LE(report.rate_plain, 1.3);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_LT(report.err_corrected[i], report.err_plain[i]);
  EXPECT_NEAR(report.fitted_constant, std::sqrt(3.0), 0.02 * std::sqrt(3.0));
  EXPECT_LE(report.fit_conservation_drift, 1e-3);
}

TEST(Sweep, ResultsDoNotDependOnThreadCount) {
  auto cfg = preset_sweep("wave-twophase");
  cfg.epsilons = {0.25, 0.125, 1.0 / 16, 1.0 / 32};
  cfg.threads = 1;
  const auto serial = run_sweep(cfg);
  cfg.threads = 3;
  const auto parallel = run_sweep(cfg);
  EXPECT_EQ(serial.err_plain, parallel.err_plain);
  EXPECT_EQ(serial.err_corrected, parallel.err_corrected);
  EXPECT_EQ(serial.fitted_constant, parallel.fitted_constant);
}

TEST(Sweep, NeedsThreeCases) {
  auto cfg = preset_sweep("wave-cosine");
  cfg.epsilons = {0.25, 0.125};
  EXPECT_EQ(test::error_code_of([&] { run_sweep(cfg); }), ErrorCode::InsufficientData);
  cfg.epsilons = {0.25, 0.125, 0.3};
  EXPECT_EQ(test::error_code_of([&] { run_sweep(cfg); }), ErrorCode::InvalidArgument);
}

TEST(Sweep, Presets) {
  const auto names = preset_names();
  EXPECT_EQ(names.size(), 6u);
  for (const auto& n : names) EXPECT_NO_THROW(preset_sweep(n));
  EXPECT_EQ(preset_sweep("diffusion-twophase").equation, EquationKind::Diffusion);
  EXPECT_EQ(test::error_code_of([] { preset_sweep("nope"); }), ErrorCode::InvalidArgument);
}

TEST(Sweep, CompareAtReturnsFields) {
  auto cfg = preset_sweep("diffusion-cosine");
  const auto cmp = compare_at(cfg, 0.25);
  ASSERT_EQ(cmp.fine.size(), cmp.x.size());
  ASSERT_EQ(cmp.corrected.size(), cmp.x.size());
  EXPECT_NEAR(cmp.outcome.comparison_time, cfg.comparison_time, 1e-12);
  EXPECT_LT(cmp.outcome.err_corrected, cmp.outcome.err_plain);
  EXPECT_LE(cmp.outcome.conservation_drift, 1e-10);
}

TEST(Report, CsvLayout) {
  ConvergenceReport rep;
  rep.epsilons = {0.125, 0.0625};
  rep.err_plain = {0.1, 0.05};
  rep.err_corrected = {0.01, 0.0025};
  rep.rate_plain = 1.0;
  rep.rate_corrected = 2.0;
  rep.fitted_constant = 1.7;
  const auto dir = test::scratch_dir("report");
  write_report_csv(rep, dir / "r.csv");
  std::ifstream in(dir / "r.csv");
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(),
            "epsilon,err_plain,err_corrected\n"
            "0.125,0.10000000000000001,0.01\n"
            "0.0625,0.050000000000000003,0.0025000000000000001\n"
            "rate_plain,1\nrate_corrected,2\nfitted_constant,1.7\n");
}

TEST(Threads, ExplicitCountWins) {
  EXPECT_EQ(resolve_thread_count(3), 3u);
  EXPECT_GE(resolve_thread_count(0), 1u);
}

}  // namespace
}  // namespace homog1d
