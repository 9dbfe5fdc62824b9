#include <benchmark/benchmark.h>

#include "qstc/optimizer.hpp"

namespace {

// One differential-evolution generation is population-size objective calls.
void BM_Generation(benchmark::State& state) {
  qstc::OptProblem p = qstc::OptProblem::make(qstc::Scenario::Full_KPlus4, static_cast<int>(state.range(0)),
                                              17.0, 0.0, 1);
  const std::size_t np = static_cast<std::size_t>(p.dimension() * p.settings.population_factor);
  for (auto _ : state) benchmark::DoNotOptimize(qstc::optimize(p, 11 * np));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * 11 * np));
}
BENCHMARK(BM_Generation)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_WindowObjective(benchmark::State& state) {
  qstc::OptProblem p = qstc::OptProblem::make(qstc::Scenario::FixedW_OptG, 2, 440.0, 0.8, 1);
  p.window_max = true;
  const std::vector<double> x = {0.4};
  for (auto _ : state) benchmark::DoNotOptimize(qstc::objective(p, x));
}
BENCHMARK(BM_WindowObjective);

}  // namespace
