// benchmarks/bench_cka.cpp

// Copyright 2026  The repstat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "repstat/cka.hpp"

using namespace repstat;

static void BM_LiteralCka(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = bench::gaussian(n, 768, 1);
  const auto y = bench::gaussian(n, 2, 2);
  CkaOptions opt;
  opt.threads = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(linear_cka(x, y, CkaVariant::literal_corr, opt));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_LiteralCka)->Args({500, 1})->Args({2000, 1})->Args({2000, 4})
    ->Unit(benchmark::kMillisecond);

static void BM_CenteredCka(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = bench::gaussian(n, 768, 1);
  const auto y = bench::gaussian(n, 39, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(linear_cka(x, y, CkaVariant::centered_feature));
  }
}
BENCHMARK(BM_CenteredCka)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);

static void BM_Gram(benchmark::State& state) {
  const auto x = bench::gaussian(static_cast<std::size_t>(state.range(0)), 768, 3);
  for (auto _ : state) benchmark::DoNotOptimize(gram(x));
}
BENCHMARK(BM_Gram)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
