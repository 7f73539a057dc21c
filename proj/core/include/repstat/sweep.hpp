// core/include/repstat/sweep.hpp

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

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace repstat {

enum class SweepKind { cka, avgu };

/// One metric value at one layer of one model.
struct SweepRow {
  std::string model;
  int layer = 0;
  std::string label;    // avgu: phone/speaker/...; cka: unused
  std::string metric;   // cka: target name; avgu: "<stat>/<distance>"
  std::string variant;  // cka: literal/centered; avgu: unused
  double value = 0.0;
  std::size_t n_points = 0;
  std::size_t n_skipped = 0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/// Per-layer curves for one or more models.
///
/// CSV headers:
///   cka:  model,layer,metric,variant,value,n_segments
///   avgu: model,layer,label,metric,value,n_points,n_skipped
struct SweepReport {
  SweepKind kind = SweepKind::cka;
  std::vector<SweepRow> rows;

  void append(const SweepReport& other);
};

void write_sweep_csv(const SweepReport& report, std::ostream& out);
void write_sweep_csv(const SweepReport& report,
                     const std::filesystem::path& path);

/// Detects the schema from the header line.
SweepReport read_sweep_csv(std::istream& in);
SweepReport read_sweep_csv(const std::filesystem::path& path);

/// Values are printed with 17 significant digits (round-trip exact).
std::string format_value(double v);

}  // namespace repstat
