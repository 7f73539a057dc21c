// core/src/kernels.hpp

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
#include <span>

namespace repstat::detail {

// Four interleaved partial sums combined in a fixed order. The order
// depends only on the length, so the result is reproducible across
// threads and symmetric in its arguments.

inline double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const double* pa = a.data();
  const double* pb = b.data();
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    s0 += pa[k] * pb[k];
    s1 += pa[k + 1] * pb[k + 1];
    s2 += pa[k + 2] * pb[k + 2];
    s3 += pa[k + 3] * pb[k + 3];
  }
  for (; k < n; ++k) s0 += pa[k] * pb[k];
  return (s0 + s1) + (s2 + s3);
}

inline double squared_distance(std::span<const double> a,
                               std::span<const double> b) {
  const std::size_t n = a.size();
  const double* pa = a.data();
  const double* pb = b.data();
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const double d0 = pa[k] - pb[k];
    const double d1 = pa[k + 1] - pb[k + 1];
    const double d2 = pa[k + 2] - pb[k + 2];
    const double d3 = pa[k + 3] - pb[k + 3];
    s0 += d0 * d0;
    s1 += d1 * d1;
    s2 += d2 * d2;
    s3 += d3 * d3;
  }
  for (; k < n; ++k) {
    const double d = pa[k] - pb[k];
    s0 += d * d;
  }
  return (s0 + s1) + (s2 + s3);
}

}  // namespace repstat::detail
