#include <benchmark/benchmark.h>

#include "pvzeta/gamma.hpp"
#include "pvzeta/schwartz.hpp"
#include "pvzeta/zeta_real.hpp"

using namespace pvzeta;

static void BM_FourierMatrix2(benchmark::State& st) {
  auto xi = random_coset_function(2, 4, 8, static_cast<int>(st.range(0)), 3);
  AdditiveCharacter psi;
  for (auto _ : st) benchmark::DoNotOptimize(fourier(xi, psi, SpaceId::Matrix2));
}
BENCHMARK(BM_FourierMatrix2)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_GammaMatrix2(benchmark::State& st) {
  std::vector<BigRational> zero(4), one{BigRational(1), BigRational(0), BigRational(0), BigRational(1)};
  std::vector<CosetFunction> tests{CosetFunction::indicator(3, zero, 0), CosetFunction::indicator(3, zero, 1),
                                   CosetFunction::indicator(3, one, 1)};
  for (auto _ : st) benchmark::DoNotOptimize(gamma_extract(SpaceId::Matrix2, 3, tests));
}
BENCHMARK(BM_GammaMatrix2)->Unit(benchmark::kMillisecond);

static void BM_RealZeta(benchmark::State& st) {
  auto space = static_cast<SpaceId>(st.range(0));
  QuadratureSpec spec;
  if (space == SpaceId::CubeSplit) spec.scheme = QuadratureScheme::TensorGauss;
  for (auto _ : st) benchmark::DoNotOptimize(zeta_real(space, 2.5, 1.0, spec));
}
BENCHMARK(BM_RealZeta)
    ->Arg(static_cast<int>(SpaceId::Tate))
    ->Arg(static_cast<int>(SpaceId::Matrix2))
    ->Arg(static_cast<int>(SpaceId::CubeSplit))
    ->Unit(benchmark::kMillisecond);
