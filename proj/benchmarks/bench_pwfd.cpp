#include <benchmark/benchmark.h>

#include <cmath>

#include "pwfd/dispersion.hpp"
#include "pwfd/linsys.hpp"
#include "pwfd/param_select.hpp"
#include "pwfd/stencil.hpp"

namespace {

pwfd::CoefficientFields pml_fields(int n) {
  const pwfd::GridSpec g{n, n, 10.0, 1.0, 0.0, 0.0};
  const auto medium = pwfd::MediumModel::from_velocity(
      g, [](double x, double z) { return 2000.0 + 0.5 * x + z; }, 20.0);
  return pwfd::coefficient_fields(medium, {100.0, 1.79, 20.0, {}});
}

void BM_Stencil25(benchmark::State& state) {
  const auto f = pml_fields(32);
  const pwfd::SchemeParams25 p{0.97, -0.016, -0.015, 0.1};
  for (auto _ : state) benchmark::DoNotOptimize(pwfd::pw25_stencil(p, f, {4, 5}));
}
BENCHMARK(BM_Stencil25);

void BM_Stencil17(benchmark::State& state) {
  const auto f = pml_fields(32);
  const pwfd::SchemeParams17 p{0.95, 0.16, -0.003};
  for (auto _ : state) benchmark::DoNotOptimize(pwfd::pw17_stencil(p, f, {4, 5}));
}
BENCHMARK(BM_Stencil17);

void BM_Assemble(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto f = pml_fields(n);
  const pwfd::PointSource src{n * 5.0, n * 5.0};
  for (auto _ : state) {
    auto sys = pwfd::assemble(pwfd::SchemeParams17{0.95, 0.16, -0.003}, f, src);
    benchmark::DoNotOptimize(sys.nonzeros());
  }
  state.SetItemsProcessed(state.iterations() * (n - 4) * (n - 4));
}
BENCHMARK(BM_Assemble)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto f = pml_fields(n);
  const auto sys = pwfd::assemble(pwfd::SchemeParams17{0.95, 0.16, -0.003}, f,
                                  pwfd::PointSource{n * 5.0, n * 5.0});
  for (auto _ : state) benchmark::DoNotOptimize(pwfd::solve(sys).relative_residual);
}
BENCHMARK(BM_Solve)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Fit(benchmark::State& state) {
  const pwfd::FitConfig cfg{{4.0, 10.0}, 1.0, static_cast<int>(state.range(0)),
                            static_cast<int>(state.range(0))};
  for (auto _ : state) {
    if (state.range(1)) {
      benchmark::DoNotOptimize(pwfd::fit_params_25(cfg).params.a1);
    } else {
      benchmark::DoNotOptimize(pwfd::fit_params_17(cfg).params.b1);
    }
  }
}
BENCHMARK(BM_Fit)->Args({64, 0})->Args({64, 1})->Args({128, 1})->Unit(benchmark::kMillisecond);

void BM_Dispersion(benchmark::State& state) {
  const pwfd::OptimalScheme s{pwfd::SchemeParams25{0.97, -0.016, -0.015, 0.1}};
  double G = 3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pwfd::evaluate_dispersion(s, 0.4, G, 1.0).vgr_ratio);
    G = G > 300.0 ? 3.0 : G * 1.01;
  }
}
BENCHMARK(BM_Dispersion);

}  // namespace

BENCHMARK_MAIN();
