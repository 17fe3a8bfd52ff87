// Serial references vs the OpenMP kernels. Thread count follows
// OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "fluctwell/kernels.hpp"
#include "fluctwell/montecarlo.hpp"

using namespace fluctwell;

namespace {

const WellConfig unit = WellConfig::dimensionless();
const SuperpositionSpec def;
const double omega_bar = 1.5 * std::numbers::pi * std::numbers::pi;

std::vector<EvalPoint> series(int steps) {
  std::vector<EvalPoint> pts;
  for (int i = 0; i < steps; ++i) pts.push_back({0.7, 300.0 * i / (steps - 1) / omega_bar});
  return pts;
}

MonteCarloSpec mc_spec(benchmark::State& state) {
  MonteCarloSpec mc;
  mc.samples = state.range(0);
  return mc;
}

void BM_mc_serial(benchmark::State& state) {
  const MonteCarloSpec mc = mc_spec(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_averaged_density_serial(def, {0.7, 1.0}, NoiseModel(0.01), mc, unit));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_mc_parallel(benchmark::State& state) {
  const MonteCarloSpec mc = mc_spec(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_averaged_density(def, {0.7, 1.0}, NoiseModel(0.01), mc, unit));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

EvaluationOptions quadrature_only() {
  EvaluationOptions opts;
  opts.monte_carlo = false;
  return opts;
}

void BM_records_serial(benchmark::State& state) {
  const auto pts = series(int(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_records_serial(def, pts, NoiseModel(0.01), quadrature_only(), unit));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_records_parallel(benchmark::State& state) {
  const auto pts = series(int(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_records(def, pts, NoiseModel(0.01), quadrature_only(), unit));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_mc_serial)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mc_parallel)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_records_serial)->Arg(601)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_records_parallel)->Arg(601)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
