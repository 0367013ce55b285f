#include <benchmark/benchmark.h>

#include "btq/symbol.hpp"

using namespace btq;

static Symbol dense_symbol(int num_vars, int degree) {
  Symbol s(num_vars);
  std::vector<int> alpha(num_vars, 0), beta(num_vars, 0);
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b) {
      alpha[0] = a;
      beta[0] = b;
      alpha[num_vars - 1] = b;
      beta[num_vars - 1] = a;
      s.add_term(TermKey{alpha, beta, Rational()}, cxd(1.0 / (1 + a + b), 0.2));
    }
  return s;
}

static void SymbolProduct(benchmark::State& state) {
  const Symbol a = dense_symbol(2, static_cast<int>(state.range(0)));
  const Symbol b = dense_symbol(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(SymbolProduct)->Arg(3)->Arg(6);

static void CochainOrder(benchmark::State& state) {
  const Symbol a = dense_symbol(2, 4);
  const Symbol b = dense_symbol(2, 4);
  for (auto _ : state)
    benchmark::DoNotOptimize(cochain(static_cast<int>(state.range(0)), a, b, -1));
}
BENCHMARK(CochainOrder)->Arg(1)->Arg(2)->Arg(3);

static void PiHAveraging(benchmark::State& state) {
  const Symbol s = dense_symbol(static_cast<int>(state.range(0)), 4);
  const DomainSpec dom = DomainSpec::plane(0.1);
  for (auto _ : state) benchmark::DoNotOptimize(pi_h(s, dom));
}
BENCHMARK(PiHAveraging)->Arg(2)->Arg(4);
