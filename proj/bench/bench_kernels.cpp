// Serial references against the OpenMP kernels. The range argument of the
// parallel variants is the thread count.
#include <benchmark/benchmark.h>

#include "bpmed/counting.hpp"
#include "bpmed/inverse.hpp"
#include "bpmed/median.hpp"
#include "bpmed/random_stats.hpp"

namespace {

using namespace bpmed;

const std::vector<Permutation>& median_inputs() {
  static const std::vector<Permutation> xs{Permutation{3, 1, 4, 8, 5, 2, 6, 7}, Permutation{2, 7, 1, 8, 4, 6, 3, 5},
                                           Permutation{6, 2, 8, 3, 1, 7, 5, 4}};
  return xs;
}

void BM_MediansSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(medians_brute_serial(median_inputs()));
}
void BM_MediansParallel(benchmark::State& state) {
  const Parallelism par{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(medians_brute(median_inputs(), {}, par));
}

const Permutation kP8{2, 6, 1, 8, 3, 5, 7, 4};

void BM_HBruteSerial(benchmark::State& state) {
  const auto base = SegmentSet::empty(8);
  for (auto _ : state) benchmark::DoNotOptimize(h_count_brute_serial(kP8, base));
}
void BM_HBruteParallel(benchmark::State& state) {
  const auto base = SegmentSet::empty(8);
  const Parallelism par{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(h_count_brute(kP8, base, {}, par));
}
void BM_HByType(benchmark::State& state) {
  const auto base = SegmentSet::empty(8);
  for (auto _ : state) benchmark::DoNotOptimize(h_count_by_type(kP8, base));
}

const Permutation kP6{3, 1, 5, 2, 6, 4};

void BM_LInverseSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(l_inverse_count_serial(kP6, 3, 1));
}
void BM_LInverseParallel(benchmark::State& state) {
  const Parallelism par{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(l_inverse_count(kP6, 3, 1, {}, par));
}
void BM_LInverseFast(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(l_inverse_count_fast(kP6, 3, 1));
}

void BM_McMoments(benchmark::State& state) {
  TrialConfig cfg;
  cfg.n = 256;
  cfg.trials = 20000;
  const Parallelism par{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(mc_moments(cfg, par));
}

}  // namespace

BENCHMARK(BM_MediansSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MediansParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HBruteSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HBruteParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HByType)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LInverseSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LInverseParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LInverseFast)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_McMoments)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
