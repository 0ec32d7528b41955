#include <benchmark/benchmark.h>

#include "killingbeck/quasi_exact.hpp"
#include "killingbeck/series.hpp"
#include "killingbeck/shooting.hpp"

using namespace killingbeck;

namespace {

const PhysicalParams kTable{5.0, -5.5};

void BM_SolveEnergy(benchmark::State& state) {
  const auto ch = channel_from_kappa(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(solve_energy(0.01, 1.0, kTable, ch));
}
BENCHMARK(BM_SolveEnergy)->Arg(-2)->Arg(1);

void BM_SolveByTermination(benchmark::State& state) {
  const int n_r = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_by_termination(0.1, 40.0, kTable, -1, n_r));
}
BENCHMARK(BM_SolveByTermination)->DenseRange(0, 3);

void BM_Shoot(benchmark::State& state) {
  const auto sol = solve_by_termination(0.01, 1.0, kTable, -1, 0).at(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(shoot(sol.energy, sol.potential, kTable, sol.channel));
  }
}
BENCHMARK(BM_Shoot);

void BM_SolveNumeric(benchmark::State& state) {
  const auto sol = solve_by_termination(0.01, 1.0, kTable, -1, 0).at(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_numeric(sol.potential, kTable, sol.channel, 0));
  }
}
BENCHMARK(BM_SolveNumeric)->Unit(benchmark::kMillisecond);

void BM_BuildWavefunction(benchmark::State& state) {
  const auto sol = solve_by_termination(0.1, 1.0, kTable, 2, 0).at(0);
  GridConfig grid;
  grid.points = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_wavefunction(sol, grid));
}
BENCHMARK(BM_BuildWavefunction)->Arg(1001)->Arg(4001)->Arg(16001);

}  // namespace

BENCHMARK_MAIN();
