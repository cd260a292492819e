#include "homog1d/cli.hpp"

#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "homog1d/cell_analysis.hpp"
#include "homog1d/config.hpp"
#include "homog1d/convergence.hpp"
#include "homog1d/csv.hpp"
#include "homog1d/errors.hpp"
#include "homog1d/fine_solver.hpp"
#include "homog1d/homog_solver.hpp"
#include "homog1d/plot_script.hpp"

namespace homog1d {

namespace {

namespace fs = std::filesystem;

struct Context {
  RunConfig config;
  fs::path base_dir;
  fs::path out_dir;
  std::ostream& out;
};

const char* coeff_name(EquationKind kind) {
  return kind == EquationKind::Wave ? "E_eff" : "K_eff";
}

InitialCondition initial_condition(const Context& ctx, const PeriodicField& coeff, double eps) {
  std::optional<CorrectorTable> corrector;
  if (ctx.config.ic == InitialPreset::WellPrepared) {
    corrector = build_corrector(coeff, Quadrature(ctx.config.quadrature), ctx.config.corrector_grid);
  }
  return make_initial_condition(ctx.config.ic, eps, std::move(corrector));
}

void report_scales(const Context& ctx) {
  if (ctx.config.dimensional && !ctx.config.epsilon) {
    ctx.out << nondimensionalize(*ctx.config.dimensional).describe() << '\n';
  }
}

int cmd_effective(const Context& ctx) {
  const auto& c = ctx.config;
  const Quadrature quad(c.quadrature);
  const auto rho = parse_field_spec(c.rho_spec, ctx.base_dir);
  const auto coeff = parse_field_spec(c.coeff_spec, ctx.base_dir);
  const auto model = build_effective_model(rho, coeff, c.equation, quad);
  ctx.out << "rho_bar = " << format_fixed6(model.rho_bar) << '\n';
  ctx.out << coeff_name(c.equation) << " = " << format_fixed6(model.coeff_eff) << '\n';
  ctx.out << "identity_residual = " << fmt::format("{:.6e}", identity_residual(coeff, quad)) << '\n';
  return 0;
}

int cmd_corrector(const Context& ctx) {
  const auto& c = ctx.config;
  const auto coeff = parse_field_spec(c.coeff_spec, ctx.base_dir);
  const auto table = build_corrector(coeff, Quadrature(c.quadrature), c.corrector_grid);
  const auto path = ctx.out_dir / fmt::format("{}_corrector.csv", c.tag);
  write_corrector_csv(table, path);
  ctx.out << "wrote " << path.string() << " (" << table.grid_size() << " nodes)\n";
  return 0;
}

void emit_snapshot_plot(const Context& ctx, const std::vector<fs::path>& files,
                        std::span<const double> times, const std::string& stem) {
  std::vector<PlotSeries> series;
  for (std::size_t k = 0; k < files.size(); ++k) {
    series.push_back({fmt::format("t = {}", format_fixed6(times[k])), files[k]});
  }
  emit_overlay_plot_script(series, ctx.out_dir / (stem + "_plot.py"), stem);
}

int cmd_solve_fine(const Context& ctx) {
  const auto& c = ctx.config;
  report_scales(ctx);
  const double eps = resolve_epsilon(c);
  const auto rho = parse_field_spec(c.rho_spec, ctx.base_dir);
  const auto coeff = parse_field_spec(c.coeff_spec, ctx.base_dir);
  const Grid1D grid(eps, c.points_per_period);
  const auto ic = initial_condition(ctx, coeff, eps);

  auto times = resolve_output_times(c);
  SimulationResult result = [&] {
    if (c.equation == EquationKind::Wave) {
      return solve_fine_wave(rho, coeff, grid, ic, c.t_end, times, WaveOptions{.cfl = c.cfl});
    }
    const double scale = 1.0 / (eps * eps);
    for (double& t : times) t *= scale;
    return solve_fine_diffusion(coeff, grid, ic, c.t_end * scale, times,
                                DiffusionOptions{.safety = c.safety});
  }();

  const auto x = grid.nodes();
  const auto files = write_snapshots(result.snapshots, x, ctx.out_dir, c.tag, "x");
  emit_snapshot_plot(ctx, files, result.times, c.tag);
  ctx.out << fmt::format("fine {} run: eps = {}, n = {}, dt = {}, steps = {}{}\n",
                         c.equation == EquationKind::Wave ? "wave" : "diffusion",
                         format_fixed6(eps), grid.n_total(), format_full(result.dt), result.steps,
                         result.dt_reduced ? " (dt reduced to the stability bound)" : "");
  ctx.out << fmt::format("{}_drift = {:.6e}\n",
                         c.equation == EquationKind::Wave ? "energy" : "mass",
                         result.max_relative_drift());
  ctx.out << "wrote " << files.size() << " snapshot(s) to " << ctx.out_dir.string() << '\n';
  return 0;
}

int cmd_solve_homog(const Context& ctx) {
  const auto& c = ctx.config;
  const auto rho = parse_field_spec(c.rho_spec, ctx.base_dir);
  const auto coeff = parse_field_spec(c.coeff_spec, ctx.base_dir);
  const Quadrature quad(c.quadrature);
  const auto model = build_effective_model(rho, coeff, c.equation, quad);
  // The coarse problem only sees the mean part of the initial data.
  const double eps = (c.epsilon || c.dimensional) ? resolve_epsilon(c) : c.epsilon_list->front();
  const auto ic = initial_condition(ctx, coeff, eps);
  const auto times = resolve_output_times(c);
  const CoarseSolution sol = c.equation == EquationKind::Wave
                                 ? solve_homog_wave(model, ic, c.t_end, c.r_points, times)
                                 : solve_homog_diffusion(model, ic, c.t_end, c.r_points, times);
  const std::string stem = c.tag + "_homog";
  const auto files = write_snapshots(sol.values, sol.r, ctx.out_dir, stem, "r");
  emit_snapshot_plot(ctx, files, sol.times, stem);
  ctx.out << coeff_name(c.equation) << " = " << format_fixed6(model.coeff_eff) << '\n';
  ctx.out << "solution = " << (sol.exact ? "closed form" : "numerical") << '\n';
  ctx.out << "wrote " << files.size() << " snapshot(s) to " << ctx.out_dir.string() << '\n';
  return 0;
}

int cmd_converge(const Context& ctx) {
  const auto& c = ctx.config;
  if (!c.epsilon_list) throw Error(ErrorCode::Config, "converge needs 'epsilon_list'");
  const auto sweep = make_sweep_config(c, ctx.base_dir);
  const auto report = run_sweep(sweep);
  const auto csv = ctx.out_dir / fmt::format("{}_report.csv", c.tag);
  write_report_csv(report, csv);
  emit_report_plot_script(csv, ctx.out_dir / fmt::format("{}_report_plot.py", c.tag));

  for (const auto& cs : report.cases) {
    if (cs.ok()) {
      ctx.out << fmt::format("eps = {}  err_plain = {:.6e}  err_corrected = {:.6e}\n",
                             format_fixed6(cs.epsilon), cs.err_plain, cs.err_corrected);
    } else {
      ctx.out << fmt::format("eps = {}  dropped: {}\n", format_fixed6(cs.epsilon), cs.failure);
    }
  }
  ctx.out << "rate_plain = " << format_fixed6(report.rate_plain) << '\n';
  ctx.out << "rate_corrected = " << format_fixed6(report.rate_corrected) << '\n';
  ctx.out << "fitted_constant = " << format_fixed6(report.fitted_constant) << " (expected "
          << format_fixed6(report.expected_constant) << ")\n";
  ctx.out << "wrote " << csv.string() << '\n';
  return 0;
}

int cmd_compare(const Context& ctx) {
  const auto& c = ctx.config;
  report_scales(ctx);
  auto sweep = make_sweep_config(c, ctx.base_dir);
  const double eps = resolve_epsilon(c);
  const auto cmp = compare_at(sweep, eps);

  const auto fine_csv = ctx.out_dir / fmt::format("{}_fine.csv", c.tag);
  const auto rec_csv = ctx.out_dir / fmt::format("{}_reconstructed.csv", c.tag);
  write_csv(fine_csv, {"x", "value"}, {cmp.x, cmp.fine});
  write_csv(rec_csv, {"x", "value"}, {cmp.x, cmp.corrected});
  emit_overlay_plot_script({{"fine", fine_csv}, {"reconstructed", rec_csv}},
                           ctx.out_dir / fmt::format("{}_compare_plot.py", c.tag),
                           fmt::format("eps = {}", format_fixed6(eps)));

  ctx.out << "eps = " << format_fixed6(eps) << '\n';
  ctx.out << "time = " << format_fixed6(cmp.outcome.comparison_time) << '\n';
  ctx.out << fmt::format("err_plain = {:.6e}\n", cmp.outcome.err_plain);
  ctx.out << fmt::format("err_corrected = {:.6e}\n", cmp.outcome.err_corrected);
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"1D periodic homogenization toolkit", "homog1d"};
  std::string command;
  std::string config_path;
  std::optional<double> epsilon;
  std::string out_dir;
  std::vector<std::string> overrides;

  app.add_option("command", command, "effective|corrector|solve-fine|solve-homog|converge|compare")
      ->required()
      ->check(CLI::IsMember(
          {"effective", "corrector", "solve-fine", "solve-homog", "converge", "compare"}));
  app.add_option("--config", config_path, "configuration file")->required();
  app.add_option("--epsilon", epsilon, "single eps (replaces epsilon/epsilon_list)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--override", overrides, "section.key=value (repeatable)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "homog1d: " << e.what() << '\n';
    return 2;
  }

  try {
    if (epsilon) overrides.push_back(fmt::format("grid.epsilon={}", format_full(*epsilon)));
    if (!out_dir.empty()) overrides.push_back("output.dir=" + out_dir);
    const fs::path path(config_path);
    Context ctx{load_config(path, overrides), path.parent_path(), {}, out};
    ctx.out_dir = ctx.config.out_dir;

    if (command == "effective") return cmd_effective(ctx);
    if (command == "corrector") return cmd_corrector(ctx);
    if (command == "solve-fine") return cmd_solve_fine(ctx);
    if (command == "solve-homog") return cmd_solve_homog(ctx);
    if (command == "converge") return cmd_converge(ctx);
    return cmd_compare(ctx);
  } catch (const Error& e) {
    err << "homog1d " << command << ": error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "homog1d " << command << ": error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace homog1d
