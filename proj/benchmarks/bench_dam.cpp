#include <benchmark/benchmark.h>

#include <vector>

#include "irfit/dam/objective.hpp"
#include "irfit/dam/particles.hpp"

using namespace irfit::dam;

namespace {

DamSimulator make_simulator() {
  DamSettings s;
  s.frames = load_frames(IRFIT_BENCH_FRAMES);
  return DamSimulator(s);
}

void BM_EnergyGradient(benchmark::State& state) {
  const auto p0 = initial_packing();
  EnergyModel energy(0.999);
  std::vector<double> g(p0.coords.size());
  for (auto _ : state) benchmark::DoNotOptimize(energy.value_gradient(p0.coords, g));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EnergyGradient);

void BM_SpgRun(benchmark::State& state) {
  const auto sim = make_simulator();
  for (auto _ : state) benchmark::DoNotOptimize(sim.simulate(0.999, state.range(0)).value);
}
BENCHMARK(BM_SpgRun)->Arg(100)->Arg(1600)->Unit(benchmark::kMillisecond);

// f(x, y): SPG plus rasterization, scoring and alignment.
void BM_Objective(benchmark::State& state) {
  const auto sim = make_simulator();
  for (auto _ : state) benchmark::DoNotOptimize(sim.evaluate(0.999, state.range(0)).f);
}
BENCHMARK(BM_Objective)->Arg(100)->Arg(1600)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
