#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "homog1d/cli.hpp"
#include "homog1d/config.hpp"
#include "homog1d/csv.hpp"
#include "homog1d/plot_script.hpp"
#include "support.hpp"

namespace homog1d {
namespace {

namespace fs = std::filesystem;

constexpr const char* kWaveConfig = R"(# test
[problem]
equation = wave
rho = constant:1
coeff = cosine:2,1
ic = well-prepared

[grid]
epsilon_list = 1/8, 1/16, 1/32, 1/64

[time]
t_end = 1

[output]
dir = out
tag = wave
)";

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "homog1d");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Config, ParsesSectionsAndRatios) {
  const auto c = parse_config(kWaveConfig);
  EXPECT_EQ(c.equation, EquationKind::Wave);
  EXPECT_EQ(c.coeff_spec, "cosine:2,1");
  ASSERT_TRUE(c.epsilon_list);
  EXPECT_EQ(*c.epsilon_list, (std::vector<double>{0.125, 0.0625, 0.03125, 0.015625}));
  EXPECT_EQ(c.points_per_period, 64u);
  EXPECT_EQ(c.tag, "wave");
}

TEST(Config, RoundTrips) {
  auto c = parse_config(kWaveConfig);
  c.output_times = {0.0, 0.1, 1.0 / 3.0};
  c.cfl = 0.3;
  c.fit_epsilon = 1.0 / 32;
  c.dimensional = DimensionalSpec{0.01, 0.64, 4.0, 1.0, false};
  EXPECT_EQ(parse_config(write_config(c)), c);
  c.dimensional.reset();
  c.epsilon_list.reset();
  c.epsilon = 1.0 / 48;
  EXPECT_EQ(parse_config(write_config(c)), c);
}

TEST(Config, RejectsMalformedInput) {
  const auto code = [](const std::string& text) {
    return test::error_code_of([&] { parse_config(text); });
  };
  const std::string base = kWaveConfig;
  EXPECT_EQ(code(base + "bogus = 1\n"), ErrorCode::Config);
  EXPECT_EQ(code(base + "tag = again\n"), ErrorCode::Config);
  EXPECT_EQ(code(base + "[grid]\nepsilon = 0.1\n"), ErrorCode::Config);  // both eps forms
  EXPECT_EQ(code("[grid]\nequation = wave\nepsilon = 0.1\n"), ErrorCode::Config);
  EXPECT_EQ(code("[grid]\nepsilon = abc\n"), ErrorCode::Config);
  EXPECT_EQ(code("[problem]\nequation = heat\n[grid]\nepsilon = 0.1\n"), ErrorCode::Config);
  EXPECT_EQ(code("[problem]\nequation = wave\n"), ErrorCode::Config);  // no eps
  EXPECT_EQ(code("[grid]\nepsilon = 0.1\n[time]\ncfl = 2\n"), ErrorCode::Config);
}

TEST(Config, Overrides) {
  const std::vector<std::string> ov{"time.t_end=2", "epsilon=1/16", "output.tag = x"};
  const auto c = parse_config(kWaveConfig, ov);
  EXPECT_EQ(c.t_end, 2.0);
  EXPECT_EQ(c.epsilon, 0.0625);
  EXPECT_FALSE(c.epsilon_list);
  EXPECT_EQ(c.tag, "x");
  const std::vector<std::string> wrong{"grid.t_end=2"};
  EXPECT_EQ(test::error_code_of([&] { parse_config(kWaveConfig, wrong); }), ErrorCode::Config);
}

TEST(Config, MakeSweepConfig) {
  const auto c = parse_config(kWaveConfig);
  const auto s = make_sweep_config(c, {});
  EXPECT_EQ(s.coeff, PeriodicField::cosine(2, 1));
  EXPECT_EQ(s.epsilons, *c.epsilon_list);
  EXPECT_EQ(s.ic, InitialPreset::WellPrepared);
  EXPECT_EQ(s.comparison_time, 1.0);
}

TEST(Nondimensionalize, Examples) {
  const auto a = nondimensionalize({1.0, 8.0, 1.0, 1.0});
  EXPECT_DOUBLE_EQ(a.epsilon, 0.125);
  EXPECT_DOUBLE_EQ(a.time_scale, 8.0);
  const auto b = nondimensionalize({0.01, 0.64, 4.0, 1.0});
  EXPECT_DOUBLE_EQ(b.epsilon, 1.0 / 64);
  EXPECT_DOUBLE_EQ(b.time_scale, 1.28);
  EXPECT_DOUBLE_EQ(b.length_scale, 0.01);
  EXPECT_EQ(test::error_code_of([] { nondimensionalize({2.0, 1.0, 1.0, 1.0}); }),
            ErrorCode::NotSmallParameter);
  const auto large = nondimensionalize({2.0, 1.0, 1.0, 1.0, true});
  EXPECT_TRUE(large.large_parameter);
  EXPECT_NE(large.describe().find("warning"), std::string::npos);
}

TEST(Config, DimensionalEpsilon) {
  const auto c = parse_config(
      "[grid]\npoints_per_period = 32\n[dimensional]\nl = 0.01\nlambda = 0.64\nrho0 = 4\nE0 = 1\n");
  EXPECT_DOUBLE_EQ(resolve_epsilon(c), 1.0 / 64);
  EXPECT_EQ(resolve_output_times(c), (std::vector<double>{0.0, 1.0}));
}

TEST(Csv, RoundTripsExactly) {
  const auto dir = test::scratch_dir("csv");
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 1e3);
  std::vector<double> a(500);
  std::vector<double> b(500);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = n(rng);
    b[i] = std::exp(n(rng) / 50.0) * 1e-200;
  }
  write_csv(dir / "sub" / "t.csv", {"a", "b"}, {a, b});
  const auto t = read_csv(dir / "sub" / "t.csv");
  ASSERT_EQ(t.headers, (std::vector<std::string>{"a", "b"}));
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_LE(std::abs(t.columns[0][i] - a[i]), 1e-12 * std::abs(a[i]));
    EXPECT_EQ(t.columns[1][i], b[i]);
  }
  EXPECT_EQ(test::error_code_of([&] { write_csv(dir / "x.csv", {"a"}, {a, b}); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(test::error_code_of([&] { read_csv(dir / "missing.csv"); }), ErrorCode::Io);
}

TEST(PlotScript, ReportHasTwoSeries) {
  const auto s = render_report_plot("r.csv");
  EXPECT_NE(s.find("(\"plain\", 1)"), std::string::npos);
  EXPECT_NE(s.find("(\"corrected\", 2)"), std::string::npos);
  EXPECT_NE(s.find("\"r.csv\""), std::string::npos);
}

TEST(PlotScript, OverlayListsEverySeries) {
  const auto s = render_overlay_plot({{"fine", "a.csv"}, {"reconstructed", "b.csv"}, {"x", "c.csv"}}, "t");
  std::size_t count = 0;
  for (auto pos = s.find("HERE / \""); pos != std::string::npos; pos = s.find("HERE / \"", pos + 1)) {
    ++count;
  }
  EXPECT_EQ(count, 3u);
  EXPECT_EQ(test::error_code_of([] { render_overlay_plot({}, "t"); }), ErrorCode::InvalidArgument);
}

TEST(PlotScript, EmitChecksInputsAndUsesRelativePaths) {
  const auto dir = test::scratch_dir("plot");
  EXPECT_EQ(test::error_code_of([&] { emit_report_plot_script(dir / "none.csv", dir / "p.py"); }),
            ErrorCode::Io);
  write_csv(dir / "data" / "r.csv", {"x", "value"}, {{1.0}, {2.0}});
  emit_overlay_plot_script({{"r", dir / "data" / "r.csv"}}, dir / "p.py", "t");
  EXPECT_NE(slurp(dir / "p.py").find("HERE / \"data/r.csv\""), std::string::npos);
}

TEST(Cli, EffectivePrintsSixDecimals) {
  const auto dir = test::scratch_dir("cli_effective");
  spit(dir / "w.cfg", kWaveConfig);
  auto r = cli({"effective", "--config", (dir / "w.cfg").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("rho_bar = 1.000000\n"), std::string::npos);
  EXPECT_NE(r.out.find("E_eff = 1.732051\n"), std::string::npos);
  EXPECT_NE(r.out.find("identity_residual = "), std::string::npos);

  r = cli({"effective", "--config", (dir / "w.cfg").string(), "--override", "coeff=constant:5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("E_eff = 5.000000\n"), std::string::npos);

  r = cli({"effective", "--config", (dir / "w.cfg").string(), "--override", "equation=diffusion",
           "--override", "coeff=twophase:1,4,0.5"});
  EXPECT_NE(r.out.find("K_eff = 1.600000\n"), std::string::npos);
}

TEST(Cli, ConvergeWritesReport) {
  const auto dir = test::scratch_dir("cli_converge");
  spit(dir / "w.cfg", kWaveConfig);
  const auto r = cli({"converge", "--config", (dir / "w.cfg").string(), "--out", (dir / "o").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto text = slurp(dir / "o" / "wave_report.csv");
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "epsilon,err_plain,err_corrected");
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.rfind("rate_", 0) != 0 && line.rfind("fitted_", 0) != 0) ++rows;
  }
  EXPECT_EQ(rows, 4);
  EXPECT_TRUE(fs::exists(dir / "o" / "wave_report_plot.py"));
}

TEST(Cli, SolveCommandsWriteSnapshots) {
  const auto dir = test::scratch_dir("cli_solve");
  spit(dir / "w.cfg", kWaveConfig);
  const auto cfg = (dir / "w.cfg").string();
  const auto out = (dir / "o").string();
  auto r = cli({"solve-fine", "--config", cfg, "--epsilon", "0.125", "--out", out, "--override",
                "output_times=0,0.5,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "o" / "wave_t2.csv"));
  EXPECT_TRUE(fs::exists(dir / "o" / "wave_plot.py"));
  EXPECT_NE(r.out.find("energy_drift = "), std::string::npos);

  r = cli({"solve-homog", "--config", cfg, "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "o" / "wave_homog_t1.csv"));

  r = cli({"corrector", "--config", cfg, "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_csv(dir / "o" / "wave_corrector.csv").columns[0].size(), 1024u);

  r = cli({"compare", "--config", cfg, "--epsilon", "0.0625", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "o" / "wave_reconstructed.csv"));
  EXPECT_NE(r.out.find("err_corrected = "), std::string::npos);
}

TEST(Cli, ErrorsGiveNonzeroExit) {
  const auto dir = test::scratch_dir("cli_errors");
  spit(dir / "w.cfg", kWaveConfig);
  const auto cfg = (dir / "w.cfg").string();
  EXPECT_EQ(cli({"frobnicate", "--config", cfg}).code, 2);
  EXPECT_EQ(cli({"effective"}).code, 2);
  auto r = cli({"effective", "--config", (dir / "missing.cfg").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("[io]"), std::string::npos);
  r = cli({"effective", "--config", cfg, "--override", "coeff=cosine:1,2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("invalid-field"), std::string::npos);
  r = cli({"solve-fine", "--config", cfg, "--epsilon", "0.3"});
  EXPECT_EQ(r.code, 1);
}

}  // namespace
}  // namespace homog1d
