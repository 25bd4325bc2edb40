#include <benchmark/benchmark.h>

#include "wkp/classify.hpp"
#include "wkp/krange.hpp"
#include "wkp/papersuite.hpp"

namespace {

using namespace wkp;

void BM_EigHermitian(benchmark::State& state) {
  const ComplexMatrix h = random_hermitian(static_cast<int>(state.range(0)), std::uint64_t{1});
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(h));
}
BENCHMARK(BM_EigHermitian)->Arg(4)->Arg(9)->Arg(12)->Arg(81)->Arg(144);

void BM_SpectralSweep(benchmark::State& state) {
  const ComplexMatrix a = random_complex(static_cast<int>(state.range(0)), std::uint64_t{2});
  for (auto _ : state) {
    const SpectralSweep sweep(a, kDefaultAngles);
    benchmark::DoNotOptimize(sweep.support(1));
  }
}
BENCHMARK(BM_SpectralSweep)->Arg(4)->Arg(9)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_KrangeProfile(benchmark::State& state) {
  const ComplexMatrix a = random_complex(static_cast<int>(state.range(0)), std::uint64_t{3});
  for (auto _ : state) benchmark::DoNotOptimize(krange_profile(a, 2, kDefaultAngles));
}
BENCHMARK(BM_KrangeProfile)->Arg(4)->Arg(9)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_VerifyCanonical(benchmark::State& state) {
  const BipartiteShape shape(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                             static_cast<int>(state.range(2)));
  const PreserverVerifier verifier(shape.m(), shape.n(), 50, kDefaultAngles, kDefaultSeed);
  const LinearMapMatrix phi =
      build_canonical({Varphi::FullTranspose, random_haar_unitary(shape.dim(), std::uint64_t{4}), false, shape});
  for (auto _ : state) benchmark::DoNotOptimize(verifier.verify(phi, shape.k(), kDefaultRangeTol));
}
BENCHMARK(BM_VerifyCanonical)->Args({2, 2, 2})->Args({3, 3, 2})->Args({3, 4, 6})->Unit(benchmark::kMillisecond);

void BM_ClassifyPreserver(benchmark::State& state) {
  const BipartiteShape shape(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                             static_cast<int>(state.range(2)));
  const LinearMapMatrix phi =
      build_canonical({Varphi::Identity, random_haar_unitary(shape.dim(), std::uint64_t{5}), false, shape});
  for (auto _ : state) benchmark::DoNotOptimize(classify_preserver(phi, shape));
}
BENCHMARK(BM_ClassifyPreserver)->Args({2, 2, 2})->Args({3, 3, 2})->Args({3, 4, 6})->Unit(benchmark::kMillisecond);

void BM_CheckExample1(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(check_example1(3, 3));
}
BENCHMARK(BM_CheckExample1);

}  // namespace

BENCHMARK_MAIN();
