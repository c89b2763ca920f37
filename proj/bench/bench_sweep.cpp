/* SPDX-License-Identifier: Apache-2.0 */
#include <benchmark/benchmark.h>

#include "plab/minima.hpp"

using namespace plab;

namespace {

ZetaVector figure1_vector(std::size_t depth) {
  std::vector<long> terms;
  for (int n = 1; n <= 48; ++n) terms.push_back((1L << n) - 1);
  return split_truncated(plain_sequence(terms), 3, depth);
}

const ZetaVector& zeta() {
  static ZetaVector z = figure1_vector(11);
  return z;
}

void BM_SweepSerial(benchmark::State& state) {
  GridSpec g{3, 8, state.range(0), 8};
  SweepOptions o;
  o.mode = EngineMode::structured;
  for (auto _ : state) benchmark::DoNotOptimize(sweep_serial(zeta(), g, o));
  state.SetItemsProcessed(state.iterations() * (g.m1 - g.m0 + 1));
}

void BM_SweepParallel(benchmark::State& state) {
  GridSpec g{3, 8, state.range(0), 8};
  SweepOptions o;
  o.mode = EngineMode::structured;
  o.jobs = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(sweep(zeta(), g, o));
  state.SetItemsProcessed(state.iterations() * (g.m1 - g.m0 + 1));
}

void BM_BruteRow(benchmark::State& state) {
  BoxParameter box{3, state.range(0), 8};
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_minima(zeta(), box));
}

void BM_StructuredRow(benchmark::State& state) {
  BoxParameter box{3, state.range(0), 8};
  for (auto _ : state) benchmark::DoNotOptimize(structured_minima(zeta(), box));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Args({128, 1})->Args({128, 2})->Args({256, 2})->Args({256, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteRow)->Arg(24)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StructuredRow)->Arg(24)->Arg(40)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
