// core/include/repstat/correlation.hpp

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
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "repstat/sweep.hpp"
#include "repstat/types.hpp"

namespace repstat {

struct CorrelationResult {
  double r = 0.0;
  double p_t = 1.0;     // two-sided, Student t with n - 2 dof
  double p_perm = 1.0;  // two-sided permutation p
  std::size_t n = 0;
  bool exhaustive = false;  // p_perm from all n! orderings
};

struct PearsonOptions {
  std::uint64_t seed = 0;
  std::size_t max_exhaustive_n = 8;
  std::size_t sampled_permutations = 100000;
};

double pearson_r(std::span<const double> x, std::span<const double> y);

/// Two-sided p for correlation r over n pairs via the t statistic
/// r sqrt((n-2)/(1-r^2)).
double pearson_p_t(double r, std::size_t n);

CorrelationResult pearson(std::span<const double> x,
                          std::span<const double> y,
                          const PearsonOptions& options = {});

enum class DownstreamTask { phone_recognition, speaker_id };

struct DownstreamRow {
  std::string model;
  std::string task;
  double score = 0.0;
};

using DownstreamTable = std::vector<DownstreamRow>;

/// CSV header: model,task,score
DownstreamTable read_downstream_csv(std::istream& in);
DownstreamTable read_downstream_csv(const std::filesystem::path& path);

/// phone -> phone_recognition, speaker -> speaker_id.
std::string task_for_label(LabelKey key);

struct DownstreamCorrelation {
  CorrelationResult result;
  std::vector<std::string> models;   // paired, sorted by id
  std::vector<double> max_avg_u;
  std::vector<double> scores;
  std::size_t excluded = 0;          // sweep models absent from the table
};

/// Pairs per-model max-over-layers AvgU for `key` with the downstream
/// score of the matching task.
DownstreamCorrelation correlate_downstream(const SweepReport& sweeps,
                                           const DownstreamTable& table,
                                           LabelKey key,
                                           const PearsonOptions& options = {});

}  // namespace repstat
