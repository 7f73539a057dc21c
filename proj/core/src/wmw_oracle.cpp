// core/src/wmw_oracle.cpp

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

#include <fmt/format.h>

#include "repstat/error.hpp"
#include "repstat/wmw.hpp"
#include "wmw_internal.hpp"

namespace repstat {

UResult avg_u_oracle(const MatrixD& x, const std::vector<std::string>& labels,
                     const DistanceSpec& spec) {
  if (x.rows() > 2000) {
    throw Error(Errc::invalid_argument,
                fmt::format("avg_u_oracle is O(N^3); N={} exceeds 2000",
                            x.rows()));
  }
  const auto idx = detail::checked_classes(x, labels);
  const auto d = distance_matrix(x, spec);
  const std::size_t n = x.rows();

  std::vector<std::optional<UPoint>> points(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> same, other;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      (idx.ids[j] == idx.ids[i] ? same : other).push_back(j);
    }
    if (same.empty() || other.empty()) continue;

    // Every (same, other) pair is either ordered one way or tied.
    std::size_t same_farther = 0, same_closer = 0, tied = 0;
    for (std::size_t s : same) {
      for (std::size_t o : other) {
        if (d(i, s) > d(i, o)) {
          ++same_farther;
        } else if (d(i, s) < d(i, o)) {
          ++same_closer;
        } else {
          ++tied;
        }
      }
    }
    UPoint p;
    p.index = i;
    p.n1 = same.size();
    p.n2 = other.size();
    const double half_ties = 0.5 * static_cast<double>(tied);
    points[i] = detail::finish_point(p, static_cast<double>(same_farther) + half_ties,
                                     static_cast<double>(same_closer) + half_ties);
  }
  return detail::summarize(idx, points);
}

UResult avg_u_oracle(const PooledMatrix& x, LabelKey key,
                     const DistanceSpec& spec) {
  return avg_u_oracle(x.data, label_column(x, key), spec);
}

}  // namespace repstat
