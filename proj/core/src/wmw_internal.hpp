// core/src/wmw_internal.hpp

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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "repstat/wmw.hpp"

namespace repstat::detail {

/// Distance rows over a fixed matrix; cosine norms are computed once and
/// zero rows rejected up front.
class DistanceRows {
 public:
  DistanceRows(const MatrixD& x, const DistanceSpec& spec);
  void fill(std::size_t i, std::span<double> out) const;

 private:
  const MatrixD& x_;
  DistanceMetric metric_;
  std::vector<double> norms_;
};

/// Fills u1, u2, u and signed_u from the two Mann-Whitney counts.
UPoint finish_point(UPoint p, double u1, double u2);

/// Validates labels and class structure shared by both AvgU routes.
ClassIndex checked_classes(const MatrixD& x,
                           const std::vector<std::string>& labels);

/// Mean over computed points in index order plus per-class means.
UResult summarize(const ClassIndex& idx,
                  const std::vector<std::optional<UPoint>>& points);

}  // namespace repstat::detail
