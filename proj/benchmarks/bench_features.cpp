// benchmarks/bench_features.cpp

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

#include <cmath>
#include <numbers>

#include <benchmark/benchmark.h>

#include "repstat/features.hpp"

using namespace repstat;

namespace {

WaveBuffer chirp(double seconds) {
  WaveBuffer w;
  w.samples.resize(static_cast<std::size_t>(seconds * w.sample_rate));
  for (std::size_t i = 0; i < w.samples.size(); ++i) {
    const double t = static_cast<double>(i) / w.sample_rate;
    w.samples[i] = 0.5 * std::sin(2.0 * std::numbers::pi * (100.0 + 400.0 * t) * t);
  }
  return w;
}

}  // namespace

static void BM_Feature(benchmark::State& state) {
  const auto w = chirp(3.0);
  const auto kind = static_cast<FeatureKind>(state.range(0));
  state.SetLabel(std::string(to_string(kind)));
  FeatureConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(compute_feature(kind, w, cfg));
}
BENCHMARK(BM_Feature)
    ->DenseRange(0, 5)
    ->Unit(benchmark::kMillisecond);
