#include <benchmark/benchmark.h>

#include <cmath>

#include "splab/evolution.hpp"
#include "splab/grid.hpp"
#include "splab/resolvent.hpp"
#include "splab/trace.hpp"

using namespace splab;

namespace {

Field gaussian(int n, int N) {
  return Field::sample(GridSpec(n, 12.0, N), Space::physical,
                       [](const Vec& x) { return std::exp(-0.5 * dot(x, x)); });
}

void BM_ForwardFT(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Field f = gaussian(n, static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(forward_ft(f));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.size()));
}
BENCHMARK(BM_ForwardFT)->Args({1, 256})->Args({2, 128})->Args({2, 256})->Args({3, 48});

void BM_Propagate(benchmark::State& state) {
  const Field f = gaussian(2, static_cast<int>(state.range(0)));
  const SymbolSpec s = SymbolSpec::lp4(2, 1.5);
  for (auto _ : state) benchmark::DoNotOptimize(propagate(f, s, 0.7));
}
BENCHMARK(BM_Propagate)->Arg(64)->Arg(128)->Arg(256);

void BM_TraceNorm(benchmark::State& state) {
  const Field f = gaussian(2, 128);
  const LevelSetQuad q = build_quad(SymbolSpec::lp4(2, 2.0), 1.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(trace_norm(f, q));
}
BENCHMARK(BM_TraceNorm)->Arg(32)->Arg(64)->Arg(128);

void BM_ResolventForm(benchmark::State& state) {
  const Field f = gaussian(2, static_cast<int>(state.range(0)));
  const SymbolSpec s = SymbolSpec::euclid(2, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(resolvent_form(BracketPower{0.5}, f, f, s, cplx(1.0, 0.01)));
}
BENCHMARK(BM_ResolventForm)->Arg(64)->Arg(128);

void BM_SpectralFormBoundary(benchmark::State& state) {
  const Field f = gaussian(2, 64);
  const SpectralForm sf(HomogeneousPower{0.0}, f, SymbolSpec::euclid(2, 2.0), 64);
  double lambda = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf.boundary_value(lambda, +1));
    lambda = lambda > 3.0 ? 0.5 : lambda + 0.01;
  }
}
BENCHMARK(BM_SpectralFormBoundary);

}  // namespace

BENCHMARK_MAIN();
