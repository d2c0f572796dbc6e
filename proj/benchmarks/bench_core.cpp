#include <benchmark/benchmark.h>

#include "tsk/chern_engine.hpp"
#include "tsk/prescribe.hpp"
#include "tsk/random_instances.hpp"
#include "tsk/reflexive_r2.hpp"

using namespace tsk;

namespace {

PrescriptionSolution quartic(int t) {
  SolveResult r = solve_p(PrescriptionProblem{4, {1, 6 * t, 6 * t, 0, 0}});
  return std::get<PrescriptionSolution>(r);
}

void BM_ChernGeneralReflexive(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  const Multifiltration m = to_multifiltration(random_reflexive(rng, n, 6, LineMode::Distinct, 0));
  for (auto _ : state) benchmark::DoNotOptimize(chern_general(m, Validation::Skip));
}
BENCHMARK(BM_ChernGeneralReflexive)->DenseRange(3, 6);

void BM_ChernResolution(benchmark::State& state) {
  Rng rng(2);
  const R2Filtration f = random_reflexive(rng, static_cast<int>(state.range(0)), 6, LineMode::Distinct, 0);
  for (auto _ : state) benchmark::DoNotOptimize(chern_resolution(f));
}
BENCHMARK(BM_ChernResolution)->DenseRange(3, 6);

void BM_SolveP(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Coords start(static_cast<std::size_t>(n) + 1, 0);
  start[0] = 1;
  start[1] = start[2] = 120;
  for (auto _ : state) benchmark::DoNotOptimize(solve_p(PrescriptionProblem{n, start}));
}
BENCHMARK(BM_SolveP)->DenseRange(4, 6);

void BM_RatioRun(benchmark::State& state) {
  const BigInt count = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(ratio_run(4, 17, count, 5));
}
BENCHMARK(BM_RatioRun)->RangeMultiplier(100)->Range(1, 1000000);

void BM_BuildSequential(benchmark::State& state) {
  const PrescriptionSolution sol = quartic(1);
  for (auto _ : state) benchmark::DoNotOptimize(build_sequence(sol));
  state.counters["injections"] = static_cast<double>(sol.total_injections().get_si());
}
BENCHMARK(BM_BuildSequential)->Unit(benchmark::kMillisecond);

void BM_BuildBulk(benchmark::State& state) {
  const PrescriptionSolution sol = quartic(static_cast<int>(state.range(0)));
  BuildOptions opt;
  opt.sequential_per_block = 8;
  for (auto _ : state) benchmark::DoNotOptimize(build_sequence(sol, opt));
}
BENCHMARK(BM_BuildBulk)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void BM_Factorize(benchmark::State& state) {
  const PrescriptionSolution sol = quartic(1);
  const BuildResult built = build_sequence(sol);
  for (auto _ : state) benchmark::DoNotOptimize(factorize(built.final_sheaf, built.start));
}
BENCHMARK(BM_Factorize)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
