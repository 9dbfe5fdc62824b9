#include <benchmark/benchmark.h>

#include "qstc/exact_algebra.hpp"
#include "qstc/factorization.hpp"

namespace {

void BM_CharPoly(benchmark::State& state) {
  const auto h = qstc::build_hamiltonian(qstc::ChainSpec::homogeneous(3 * state.range(0) + 5));
  for (auto _ : state) benchmark::DoNotOptimize(qstc::char_poly_exact(h));
}
BENCHMARK(BM_CharPoly)->Arg(5)->Arg(15)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_Factor(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto p = qstc::char_poly_exact(qstc::build_hamiltonian(qstc::ChainSpec::homogeneous(3 * k + 5)));
  const auto q = qstc::reduce_even(p, k);
  for (auto _ : state) benchmark::DoNotOptimize(qstc::factor(q));
}
BENCHMARK(BM_Factor)->Arg(9)->Arg(23)->Arg(29)->Unit(benchmark::kMillisecond);

void BM_CharPolyReport(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qstc::char_poly_report(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CharPolyReport)->Arg(23)->Unit(benchmark::kMillisecond);

}  // namespace
