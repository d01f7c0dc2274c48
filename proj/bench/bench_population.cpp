// Times serial versus OpenMP population evaluation of the planning objective.

#include <benchmark/benchmark.h>

#include <random>

#include "berth/planner.hpp"
#include "berth/population.hpp"

namespace {

berth::Population sample(const berth::Scenario& sc, int lambda) {
  const auto box = sc.box_bounds();
  std::mt19937_64 rng(7);
  berth::Population xs(lambda, std::vector<double>(box.dim()));
  for (auto& x : xs)
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = std::uniform_real_distribution<double>(box.lower[i], box.upper[i])(rng);
  return xs;
}

void BM_Serial(benchmark::State& state) {
  const auto sc = berth::builtin("nanko_berth");
  const auto f = berth::make_objective(sc);
  const auto xs = sample(sc, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(berth::evaluate_population_serial(f, xs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Parallel(benchmark::State& state) {
  const auto sc = berth::builtin("nanko_berth");
  const auto f = berth::make_objective(sc);
  const auto xs = sample(sc, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(berth::evaluate_population_parallel(f, xs, 0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_Serial)->Arg(20)->Arg(80)->Arg(240)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Parallel)->Arg(20)->Arg(80)->Arg(240)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
