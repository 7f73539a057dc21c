// core/include/repstat/wmw.hpp

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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "repstat/matrix.hpp"
#include "repstat/sweep.hpp"
#include "repstat/types.hpp"

namespace repstat {

enum class DistanceMetric { euclidean, cosine };

std::string_view to_string(DistanceMetric m) noexcept;
std::optional<DistanceMetric> parse_distance_metric(
    std::string_view text) noexcept;

struct DistanceSpec {
  DistanceMetric metric = DistanceMetric::euclidean;
  /// 0: use default_thread_count().
  std::size_t threads = 0;
};

/// Distances from row i to every row (out.size() == rows).
void distance_row(const MatrixD& x, std::size_t i, const DistanceSpec& spec,
                  std::span<double> out);

/// Symmetric, zero diagonal, nonnegative. Cosine distance is 1 - cos and
/// rejects zero rows.
MatrixD distance_matrix(const MatrixD& x, const DistanceSpec& spec);

/// Class labels mapped to dense ids, first-seen order.
struct ClassIndex {
  std::vector<std::size_t> ids;
  std::vector<std::string> names;
  std::vector<std::size_t> sizes;
};
ClassIndex index_classes(const std::vector<std::string>& labels);

/// Per-point result of the multivariate rank-sum statistic.
struct UPoint {
  std::size_t index = 0;
  double u = 0.0;       // max(U1', U2') / (n1 n2), in [0.5, 1]
  double signed_u = 0.0;  // U2' / (n1 n2): 1 when same class is nearest
  double u1 = 0.0;      // R1 - n1(n1+1)/2, same-class points
  double u2 = 0.0;      // R2 - n2(n2+1)/2, other-class points
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

/// Ranks every j != i by distances[j] (average ranks for ties) and
/// evaluates U_x for point i. Returns nullopt when i has no same-class
/// partner or no other-class point.
std::optional<UPoint> u_point(std::span<const double> distances,
                              std::span<const std::size_t> class_ids,
                              std::size_t i);

struct UResult {
  double avg_u = 0.0;
  std::vector<UPoint> per_point;
  std::map<std::string, double> per_class;
  std::size_t skipped = 0;
};

/// Mean of U_x over all points whose class has at least two members.
/// Streams one distance row per point; O(N^2 log N) time.
UResult avg_u(const MatrixD& x, const std::vector<std::string>& labels,
              const DistanceSpec& spec = {});
UResult avg_u(const PooledMatrix& x, LabelKey key,
              const DistanceSpec& spec = {});

/// Reference AvgU by explicit pairwise comparison counting, no ranking.
/// O(N^3); refuses N > 2000.
UResult avg_u_oracle(const MatrixD& x, const std::vector<std::string>& labels,
                     const DistanceSpec& spec = {});
UResult avg_u_oracle(const PooledMatrix& x, LabelKey key,
                     const DistanceSpec& spec = {});

/// (R1 - n1(n1+1)/2) / (n1 n2) with average-rank ties; R1 over positives.
double auc_binary(std::span<const double> scores,
                  std::span<const bool> positive);

/// Average (fractional) ranks starting at 1.
std::vector<double> average_ranks(std::span<const double> values);

std::string avgu_metric_name(std::string_view statistic, DistanceMetric m);

SweepReport u_sweep(const LayerStack& stack, LabelKey key,
                    const DistanceSpec& spec = {});

/// Per layer: avg_u(zscore(layer)) - avg_u(layer).
SweepReport normalization_delta(const LayerStack& stack, LabelKey key,
                                const DistanceSpec& spec = {});

}  // namespace repstat
