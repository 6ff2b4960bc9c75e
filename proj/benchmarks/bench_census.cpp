#include <benchmark/benchmark.h>

#include "pvzeta/census.hpp"

using namespace pvzeta;

static void BM_DirectMatrix2(benchmark::State& st) {
  int m = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(census_exact(SpaceId::Matrix2, 2, m, CensusStrategy::Direct));
}
BENCHMARK(BM_DirectMatrix2)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_BranchLiftMatrix2(benchmark::State& st) {
  int m = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(census_exact(SpaceId::Matrix2, 3, m, CensusStrategy::BranchLift));
}
BENCHMARK(BM_BranchLiftMatrix2)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

// Single-threaded so the numbers compare across machines.
static void BM_BranchLiftCube(benchmark::State& st) {
  CensusOptions opt;
  opt.threads = 1;
  int m = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(census_exact(SpaceId::CubeSplit, 2, m, CensusStrategy::BranchLift, opt));
}
BENCHMARK(BM_BranchLiftCube)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void BM_FiberedCube(benchmark::State& st) {
  int m = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(cube_fibered_census(2, m, {}));
}
BENCHMARK(BM_FiberedCube)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_MonteCarloCube(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(census_monte_carlo(SpaceId::CubeSplit, 2, 3, static_cast<std::uint64_t>(st.range(0)), 6, 1));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_MonteCarloCube)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_IgusaAnsatzCube(benchmark::State& st) {
  auto c = cube_fibered_census(2, 8, {});
  for (auto _ : st) benchmark::DoNotOptimize(zeta_igusa_ansatz(c, 2, 2));
}
BENCHMARK(BM_IgusaAnsatzCube)->Unit(benchmark::kMillisecond);
