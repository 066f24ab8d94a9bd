// Serial reference vs OpenMP path for the data-parallel kernels.

#include <benchmark/benchmark.h>

#include "ddvv/exterior.hpp"
#include "ddvv/lemmas.hpp"
#include "ddvv/optim.hpp"

using namespace ddvv;

namespace {

Execution exec_of(const benchmark::State& state) {
  return state.range(1) == 0 ? Execution::Serial : Execution::Parallel;
}

void BM_GramOfBasis(benchmark::State& state) {
  const BasisSet basis = hermitian_basis(static_cast<int>(state.range(0)));
  const Execution exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(gram_of_basis(basis, exec));
  state.SetLabel(exec == Execution::Serial ? "serial" : "parallel");
}

void BM_LemmaTrials(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Execution exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(run_lemma_trials(n, 2000, 1, exec));
  state.SetLabel(exec == Execution::Serial ? "serial" : "parallel");
}

void BM_MaximizeRatio(benchmark::State& state) {
  SearchConfig cfg;
  cfg.cls = MatrixClass::Hermitian;
  cfg.m = 3;
  cfg.n = static_cast<int>(state.range(0));
  cfg.restarts = 16;
  cfg.max_iters = 200;
  cfg.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(maximize_ratio(cfg).best_ratio);
  state.SetLabel(cfg.exec == Execution::Serial ? "serial" : "parallel");
}

void BM_MaximizeFQ(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RandomStream rng(3);
  const BasisRotation Q = BasisRotation::sample_special(n * n, rng);
  SimplexSearchConfig cfg;
  cfg.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(maximize_fQ(Q, n, cfg).best_value);
  state.SetLabel(cfg.exec == Execution::Serial ? "serial" : "parallel");
}

}  // namespace

BENCHMARK(BM_GramOfBasis)->ArgsProduct({{3, 4, 5}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LemmaTrials)->ArgsProduct({{3, 4}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaximizeRatio)->ArgsProduct({{2, 4}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaximizeFQ)->ArgsProduct({{2, 3}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
