#include <benchmark/benchmark.h>

#include "qstc/dynamics.hpp"

namespace {

void BM_Decompose(benchmark::State& state) {
  const auto h = qstc::build_hamiltonian(qstc::ChainSpec::homogeneous(3 * state.range(0) + 5));
  for (auto _ : state) benchmark::DoNotOptimize(qstc::decompose(h));
}
BENCHMARK(BM_Decompose)->Arg(2)->Arg(10)->Arg(30);

void BM_Probability(benchmark::State& state) {
  const qstc::Propagator prop(qstc::build_hamiltonian(qstc::ChainSpec::homogeneous(35)));
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(prop.probability(t));
    t += 0.01;
  }
}
BENCHMARK(BM_Probability);

void BM_PeakSearchSeries(benchmark::State& state) {
  const auto series = qstc::closed_form_probability(qstc::ChainSpec::dimerized(3, 1.0, 0.8, 0.4));
  for (auto _ : state) benchmark::DoNotOptimize(qstc::peak_search(series, static_cast<double>(state.range(0))));
}
BENCHMARK(BM_PeakSearchSeries)->Arg(110)->Arg(440);

}  // namespace
