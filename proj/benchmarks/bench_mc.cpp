#include <benchmark/benchmark.h>

#include "btq/matrix_hilbert.hpp"
#include "btq/rng.hpp"

using namespace btq;

static void HaarSampling(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    std::mt19937_64 rng = sample_engine(1, i++);
    benchmark::DoNotOptimize(haar_sample(N, rng));
  }
}
BENCHMARK(HaarSampling)->Arg(2)->Arg(3)->Arg(8);

static void GramEstimator(benchmark::State& state) {
  const DomainSpec dom = DomainSpec::plane(0.5);
  McOptions opt;
  opt.samples = 2000;
  opt.workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gram_mc(dom, 3, 4, opt));
}
BENCHMARK(GramEstimator)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
