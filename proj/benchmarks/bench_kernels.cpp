#include <benchmark/benchmark.h>

#include "fracwave/duhamel.hpp"
#include "fracwave/initial_data.hpp"
#include "fracwave/nonlinearity.hpp"
#include "fracwave/semilinear.hpp"
#include "fracwave/transform.hpp"

using namespace fracwave;

namespace {

PhaseState random_state(const SpectrumPtr& s) {
  InitialData d;
  d.kind = InitialKind::random_seeded;
  return d.generate(s);
}

Scenario cubic(int dims, int n) {
  auto s = build_spectrum(BoxDomain::unit(dims), n);
  Scenario sc;
  sc.spectrum = s;
  sc.damping = DampingParams::make(1.0, 0.25);
  sc.nonlinearity = Nonlinearity::odd_power(2.0);
  sc.forcing = SpectralField::mode(s, 0, 1.0);
  sc.initial = random_state(s);
  sc.dt = 0.01;
  return sc;
}

}  // namespace

// args: dims, modes per axis
void BM_RoundTrip(benchmark::State& state) {
  auto s = build_spectrum(BoxDomain::unit(static_cast<int>(state.range(0))), static_cast<int>(state.range(1)));
  const auto u = random_state(s).position;
  for (auto _ : state) benchmark::DoNotOptimize(from_grid(to_grid(u, 2)));
}
BENCHMARK(BM_RoundTrip)->Args({1, 1024})->Args({2, 64})->Args({3, 16});

void BM_Nonlinearity(benchmark::State& state) {
  auto s = build_spectrum(BoxDomain::unit(static_cast<int>(state.range(0))), static_cast<int>(state.range(1)));
  const auto u = random_state(s).position;
  const auto nl = Nonlinearity::odd_power(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(eval_nonlinearity(u, nl, 2));
}
BENCHMARK(BM_Nonlinearity)->Args({1, 1024})->Args({2, 64})->Args({3, 16});

void BM_StepKernelBuild(benchmark::State& state) {
  auto s = build_spectrum(BoxDomain::unit(1), static_cast<int>(state.range(0)));
  LinearFlow flow(s, DampingParams::make(1.0, 0.25));
  for (auto _ : state) benchmark::DoNotOptimize(StepKernel(flow, 0.01));
}
BENCHMARK(BM_StepKernelBuild)->Arg(64)->Arg(1024);

void BM_SolverStep(benchmark::State& state) {
  const auto sc = cubic(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  Solver solver(sc);
  PhaseState x = sc.initial;
  for (auto _ : state) benchmark::DoNotOptimize(solver.step(x, 0.0, sc.dt));
}
BENCHMARK(BM_SolverStep)->Args({1, 64})->Args({2, 32})->Args({3, 12});

BENCHMARK_MAIN();
