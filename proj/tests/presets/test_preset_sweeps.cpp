// Full eps-sweeps of every shipped preset. Slow: the diffusion sweeps run
// O(1/eps^2) fine steps at eps = 1/64.

#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "homog1d/convergence.hpp"

namespace homog1d {
namespace {

class PresetSweep : public ::testing::TestWithParam<std::string> {};

TEST_P(PresetSweep, CorrectorHelpsAndConstantIsRecovered) {
  const auto cfg = preset_sweep(GetParam());
  const auto report = run_sweep(cfg);
  ASSERT_EQ(report.cases.size(), cfg.epsilons.size());
  for (std::size_t i = 0; i < report.cases.size(); ++i) {
    ASSERT_TRUE(report.cases[i].ok()) << report.cases[i].failure;
    EXPECT_LE(report.err_corrected[i], report.err_plain[i]) << "eps = " << report.epsilons[i];
  }
  const double rel = std::abs(report.fitted_constant - report.expected_constant) / report.expected_constant;
  EXPECT_LE(rel, 0.05) << "fitted " << report.fitted_constant << " expected " << report.expected_constant;
  const double drift_bound = cfg.equation == EquationKind::Wave ? 1e-3 : 1e-10;
  EXPECT_LE(report.fit_conservation_drift, drift_bound);
  for (const auto& c : report.cases) EXPECT_LE(c.conservation_drift, drift_bound);
}

INSTANTIATE_TEST_SUITE_P(All, PresetSweep, ::testing::ValuesIn(preset_names()),
                         [](const auto& info) {
                           std::string name = info.param;
                           for (char& ch : name) {
                             if (ch == '-') ch = '_';
                           }
                           return name;
                         });

}  // namespace
}  // namespace homog1d
