// benchmarks/bench_wmw.cpp

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
#include "repstat/wmw.hpp"

using namespace repstat;

static void BM_DistanceMatrix(benchmark::State& state) {
  const auto x = bench::gaussian(static_cast<std::size_t>(state.range(0)), 768, 4);
  DistanceSpec spec;
  spec.metric = state.range(1) ? DistanceMetric::cosine : DistanceMetric::euclidean;
  for (auto _ : state) benchmark::DoNotOptimize(distance_matrix(x, spec));
}
BENCHMARK(BM_DistanceMatrix)->Args({500, 0})->Args({500, 1})->Unit(benchmark::kMillisecond);

static void BM_AvgU(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = bench::gaussian(n, 768, 5);
  const auto y = bench::labels(n, 40);
  for (auto _ : state) benchmark::DoNotOptimize(avg_u(x, y).avg_u);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_AvgU)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_AvgUOracle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = bench::gaussian(n, 32, 6);
  const auto y = bench::labels(n, 10);
  for (auto _ : state) benchmark::DoNotOptimize(avg_u_oracle(x, y).avg_u);
}
BENCHMARK(BM_AvgUOracle)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);
