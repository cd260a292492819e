#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "homog1d/cell_analysis.hpp"
#include "homog1d/fine_solver.hpp"
#include "homog1d/periodic_field.hpp"

namespace {

using namespace homog1d;

void BM_EffectiveCoefficient(benchmark::State& state) {
  const auto e = PeriodicField::cosine(2, 1);
  const Quadrature quad(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(effective_coefficient(e, quad));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EffectiveCoefficient)->RangeMultiplier(4)->Range(256, 65536);

void BM_BuildCorrector(benchmark::State& state) {
  const auto e = PeriodicField::two_phase(1, 4, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(build_corrector(e, Quadrature(4096), 1024));
}
BENCHMARK(BM_BuildCorrector);

void BM_FluxApply(benchmark::State& state) {
  const Grid1D grid(1.0 / static_cast<double>(state.range(0)), 64);
  const FluxOperator op(sample_faces(PeriodicField::cosine(2, 1), grid), grid.h());
  std::vector<double> a(grid.n_total(), 1.0);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = static_cast<double>(i % 17);
  for (auto _ : state) {
    op.apply(a, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(a.size()));
}
BENCHMARK(BM_FluxApply)->Arg(8)->Arg(32)->Arg(128);

void BM_LeapfrogStep(benchmark::State& state) {
  const Grid1D grid(1.0 / static_cast<double>(state.range(0)), 64);
  const auto rho = PeriodicField::constant(1);
  const auto e = PeriodicField::cosine(2, 1);
  FluxOperator op(sample_faces(e, grid), grid.h());
  std::vector<double> mass(grid.n_total(), grid.epsilon() * grid.epsilon());
  std::vector<double> a0(grid.n_total());
  for (std::size_t i = 0; i < a0.size(); ++i) a0[i] = std::sin(grid.epsilon() * grid.x(i));
  const std::vector<double> v0(a0.size(), 0.0);
  LeapfrogStepper stepper(std::move(op), mass, wave_time_step_bound(rho, e, grid, 0.5), a0, v0);
  for (auto _ : state) stepper.step();
  state.SetItemsProcessed(state.iterations() * static_cast<long>(a0.size()));
}
BENCHMARK(BM_LeapfrogStep)->Arg(8)->Arg(32)->Arg(128);

}  // namespace
BENCHMARK_MAIN();
