#include <benchmark/benchmark.h>

#include "btq/fock.hpp"

using namespace btq;

static void ToeplitzBuild(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  const FockBasis basis(DomainSpec::plane(8.0 / K), K);
  const Symbol phi = Symbol::monomial(1, {1}, {1}, 1.0, Rational(1));
  for (auto _ : state) benchmark::DoNotOptimize(toeplitz_matrix(phi, basis));
}
BENCHMARK(ToeplitzBuild)->Arg(50)->Arg(200)->Arg(400);

static void OpNorm(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  const FockBasis basis(DomainSpec::plane(8.0 / K), K);
  const Symbol phi = Symbol::monomial(1, {1}, {1}, 1.0, Rational(1));
  const Matrix M = toeplitz_matrix(phi, basis).entries;
  for (auto _ : state) benchmark::DoNotOptimize(op_norm(M));
}
BENCHMARK(OpNorm)->Arg(50)->Arg(200)->Arg(400);
