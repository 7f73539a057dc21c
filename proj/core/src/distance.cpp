// core/src/distance.cpp

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

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "repstat/error.hpp"
#include "repstat/parallel.hpp"
#include "repstat/wmw.hpp"
#include "kernels.hpp"
#include "wmw_internal.hpp"

namespace repstat {

std::string_view to_string(DistanceMetric m) noexcept {
  return m == DistanceMetric::euclidean ? "euclidean" : "cosine";
}

std::optional<DistanceMetric> parse_distance_metric(
    std::string_view text) noexcept {
  if (text == "euclidean") return DistanceMetric::euclidean;
  if (text == "cosine") return DistanceMetric::cosine;
  return std::nullopt;
}

namespace detail {

DistanceRows::DistanceRows(const MatrixD& x, const DistanceSpec& spec)
    : x_(x), metric_(spec.metric) {
  if (metric_ != DistanceMetric::cosine) return;
  norms_.resize(x.rows());
  for (std::size_t j = 0; j < x.rows(); ++j) {
    norms_[j] = std::sqrt(dot(x.row(j), x.row(j)));
    if (!(norms_[j] > 0.0)) {
      throw Error(Errc::zero_vector,
                  fmt::format("cosine distance undefined for zero row {}", j));
    }
  }
}

void DistanceRows::fill(std::size_t i, std::span<double> out) const {
  const auto xi = x_.row(i);
  const std::size_t n = x_.rows();
  if (metric_ == DistanceMetric::euclidean) {
    for (std::size_t j = 0; j < n; ++j) {
      out[j] = std::sqrt(squared_distance(xi, x_.row(j)));
    }
    return;
  }
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = j == i ? 0.0
                    : std::clamp(1.0 - dot(xi, x_.row(j)) / (norms_[i] * norms_[j]),
                                 0.0, 2.0);
  }
}

}  // namespace detail

void distance_row(const MatrixD& x, std::size_t i, const DistanceSpec& spec,
                  std::span<double> out) {
  detail::DistanceRows(x, spec).fill(i, out);
}

MatrixD distance_matrix(const MatrixD& x, const DistanceSpec& spec) {
  if (x.rows() < 2) {
    throw Error(Errc::too_few_rows,
                fmt::format("distance matrix needs at least 2 rows, got {}",
                            x.rows()));
  }
  const detail::DistanceRows rows(x, spec);
  MatrixD d(x.rows(), x.rows());
  parallel_for(x.rows(), spec.threads,
               [&](std::size_t i) { rows.fill(i, d.row(i)); });
  return d;
}

}  // namespace repstat
