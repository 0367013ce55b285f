#include <benchmark/benchmark.h>

#include "btq/kernels.hpp"
#include "btq/rng.hpp"

using namespace btq;

static void KernelEval(benchmark::State& state) {
  const DomainSpec dom = DomainSpec::plane(0.5);
  const KernelSeries ks{dom, static_cast<int>(state.range(0))};
  std::mt19937_64 rng = sample_engine(5, 0);
  const NormalTuple X = mu_sample(dom, 3, 1, rng);
  const NormalTuple Y = mu_sample(dom, 3, 1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_eval(X, Y, ks));
}
BENCHMARK(KernelEval)->Arg(32)->Arg(64);

static void ProductKernelEval(benchmark::State& state) {
  const DomainSpec dom = DomainSpec::plane(0.5);
  const KernelSeries ks{dom, static_cast<int>(state.range(0))};
  std::mt19937_64 rng = sample_engine(7, 0);
  const ProductTuple X = product_mu_sample(dom, 2, 2, rng);
  const ProductTuple Y = product_mu_sample(dom, 2, 2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(product_kernel_eval(X, Y, ks));
}
BENCHMARK(ProductKernelEval)->Arg(24)->Arg(40);
