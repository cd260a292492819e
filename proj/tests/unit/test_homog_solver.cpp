#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "homog1d/homog_solver.hpp"
#include "support.hpp"

namespace homog1d {
namespace {

EffectiveModel wave_model() {
  return build_effective_model(PeriodicField::constant(1), PeriodicField::cosine(2, 1),
                               EquationKind::Wave);
}

EffectiveModel diffusion_model() {
  return build_effective_model(PeriodicField::constant(1), PeriodicField::two_phase(1, 4, 0.5),
                               EquationKind::Diffusion);
}

TEST(HomogWave, ClosedFormIsStandingWave) {
  const auto model = wave_model();
  const InitialCondition ic(InitialPreset::SineMode, 0.125);
  const std::vector<double> times{0.0, 0.7, 2.0};
  const auto sol = solve_homog_wave(model, ic, 2.0, 64, times);
  ASSERT_TRUE(sol.exact);
  const double c = std::sqrt(std::sqrt(3.0));
  for (std::size_t k = 0; k < times.size(); ++k) {
    EXPECT_NEAR(sol.mode_amplitudes[k], std::cos(c * times[k]), 1e-8);
    EXPECT_NEAR(sol.sample(k, 1.1), std::cos(c * times[k]) * std::sin(1.1), 1e-8);
    EXPECT_NEAR(sol.sample_gradient(k, 1.1), std::cos(c * times[k]) * std::cos(1.1), 1e-8);
  }
}

TEST(HomogDiffusion, ClosedFormDecays) {
  const InitialCondition ic(InitialPreset::SineMode, 0.125);
  const std::vector<double> times{0.0, 0.5};
  const auto sol = solve_homog_diffusion(diffusion_model(), ic, 0.5, 64, times);
  ASSERT_TRUE(sol.exact);
  EXPECT_NEAR(sol.mode_amplitudes[1], std::exp(-1.6 * 0.5), 1e-12);
}

TEST(HomogWave, NumericalAgreesWithClosedForm) {
  const auto model = wave_model();
  const InitialCondition ic(InitialPreset::SineMode, 0.125);
  const std::vector<double> times{0.0, 1.0, 3.0};
  CoarseOptions opts;
  opts.force_numerical = true;
  const auto num = solve_homog_wave(model, ic, 3.0, 256, times, opts);
  ASSERT_FALSE(num.exact);
  // Numerical snapshots sit on step times; evaluate the closed form there.
  const auto exact = solve_homog_wave(model, ic, 3.0, 256, num.times);
  for (std::size_t k = 0; k < times.size(); ++k) {
    for (std::size_t j = 0; j < num.r.size(); ++j) {
      EXPECT_NEAR(num.values[k][j], exact.values[k][j], 1e-4);
    }
  }
  EXPECT_LE(num.max_relative_drift(), 1e-3);
}

TEST(HomogDiffusion, NumericalAgreesWithClosedForm) {
  const InitialCondition ic(InitialPreset::SineMode, 0.125);
  const std::vector<double> times{0.0, 0.5};
  CoarseOptions opts;
  opts.force_numerical = true;
  const auto num = solve_homog_diffusion(diffusion_model(), ic, 0.5, 256, times, opts);
  const auto exact = solve_homog_diffusion(diffusion_model(), ic, 0.5, 256, num.times);
  for (std::size_t j = 0; j < num.r.size(); ++j) EXPECT_NEAR(num.values[1][j], exact.values[1][j], 1e-4);
}

TEST(HomogDiffusion, GaussianConservesMass) {
  const InitialCondition ic(InitialPreset::Gaussian, 0.125);
  const std::vector<double> times{0.0, 0.3};
  const auto sol = solve_homog_diffusion(diffusion_model(), ic, 0.3, 128, times);
  EXPECT_FALSE(sol.exact);
  EXPECT_LE(sol.max_relative_drift(), 1e-10);
  // Peak spreads and drops.
  EXPECT_LT(*std::max_element(sol.values[1].begin(), sol.values[1].end()),
            *std::max_element(sol.values[0].begin(), sol.values[0].end()));
}

TEST(HomogSolution, GradientSamplingConvergesUnderRefinement) {
  const InitialCondition ic(InitialPreset::Gaussian, 0.125);
  const std::vector<double> times{0.0};
  double prev = 0.0;
  for (std::size_t n : {32u, 64u, 128u}) {
    const auto sol = solve_homog_wave(wave_model(), ic, 0.0, n, times);
    double err = 0.0;
    for (double r = 0.05; r < kTwoPi; r += 0.173) {
      err = std::max(err, std::abs(sol.sample_gradient(0, r) - ic.coarse_gradient(r)));
      err = std::max(err, std::abs(sol.sample(0, r) - ic.coarse(r)));
    }
    if (n > 32) EXPECT_LT(err, prev / 3.0) << n;
    prev = err;
  }
}

TEST(HomogSolvers, Validation) {
  const InitialCondition ic(InitialPreset::SineMode, 0.125);
  const std::vector<double> times{0.0};
  EXPECT_EQ(test::error_code_of([&] { solve_homog_wave(diffusion_model(), ic, 1.0, 64, times); }),
            ErrorCode::KindMismatch);
  EXPECT_EQ(test::error_code_of([&] { solve_homog_diffusion(wave_model(), ic, 1.0, 64, times); }),
            ErrorCode::KindMismatch);
  EXPECT_EQ(test::error_code_of([&] { solve_homog_wave(wave_model(), ic, 1.0, 4, times); }),
            ErrorCode::InvalidArgument);
}

}  // namespace
}  // namespace homog1d
