#include <benchmark/benchmark.h>

#include <numbers>

#include "freeshear/diagnostics.hpp"
#include "freeshear/dynamics.hpp"

namespace {

using namespace freeshear;

constexpr double kPi = std::numbers::pi;

GalerkinSystem make_system(int n) {
  const auto basis = make_basis(Domain{2 * kPi, 2 * kPi, kPi, 0.05}, Truncation{n, n, n});
  return GalerkinSystem(basis, ShearProfile::mixing_layer(1.0, -1.0, 1.0));
}

void BM_Nonlinear(benchmark::State& state) {
  const GalerkinSystem sys = make_system(static_cast<int>(state.range(0)));
  const SpectralField u = initial_condition(sys.basis(), 1, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(sys.nonlinear(u));
  state.counters["modes"] = static_cast<double>(sys.basis()->size());
}
BENCHMARK(BM_Nonlinear)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Step(benchmark::State& state) {
  const GalerkinSystem sys = make_system(static_cast<int>(state.range(0)));
  SimState s{0.0, initial_condition(sys.basis(), 1, 0.5), 0, 0.0};
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  for (auto _ : state) sys.step(s, cfg);
}
BENCHMARK(BM_Step)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ShearOperators(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Basis basis(Domain{2 * kPi, 2 * kPi, kPi, 0.05}, Truncation{n, n, n});
  const ShearProfile p = ShearProfile::mixing_layer(1.0, -1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(shear_operators(basis, p));
}
BENCHMARK(BM_ShearOperators)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_BudgetSample(benchmark::State& state) {
  const GalerkinSystem sys = make_system(static_cast<int>(state.range(0)));
  const SpectralField u = initial_condition(sys.basis(), 1, 0.5);
  const SpectralField N = sys.nonlinear(u);
  for (auto _ : state) benchmark::DoNotOptimize(budget_sample(sys, u, N));
}
BENCHMARK(BM_BudgetSample)->Arg(8)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
