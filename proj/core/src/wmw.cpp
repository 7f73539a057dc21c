// core/src/wmw.cpp

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
#include <map>
#include <numeric>
#include <unordered_map>

#include <fmt/format.h>

#include "repstat/error.hpp"
#include "repstat/parallel.hpp"
#include "repstat/pool.hpp"
#include "repstat/wmw.hpp"
#include "wmw_internal.hpp"

namespace repstat {

ClassIndex index_classes(const std::vector<std::string>& labels) {
  ClassIndex idx;
  std::unordered_map<std::string, std::size_t> lookup;
  idx.ids.reserve(labels.size());
  for (const auto& l : labels) {
    auto [it, inserted] = lookup.try_emplace(l, idx.names.size());
    if (inserted) {
      idx.names.push_back(l);
      idx.sizes.push_back(0);
    }
    ++idx.sizes[it->second];
    idx.ids.push_back(it->second);
  }
  return idx;
}

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 hold ranks i+1..j; their mean is (i + j + 1) / 2.
    const double rank = 0.5 * static_cast<double>(i + j + 1);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

std::optional<UPoint> u_point(std::span<const double> distances,
                              std::span<const std::size_t> class_ids,
                              std::size_t i) {
  const std::size_t n = distances.size();
  std::vector<double> others;
  std::vector<bool> same;
  others.reserve(n - 1);
  same.reserve(n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    others.push_back(distances[j]);
    same.push_back(class_ids[j] == class_ids[i]);
  }
  const auto ranks = average_ranks(others);

  UPoint p;
  p.index = i;
  double r1 = 0.0, r2 = 0.0;
  for (std::size_t k = 0; k < ranks.size(); ++k) {
    if (same[k]) {
      r1 += ranks[k];
      ++p.n1;
    } else {
      r2 += ranks[k];
      ++p.n2;
    }
  }
  if (p.n1 == 0 || p.n2 == 0) return std::nullopt;
  return detail::finish_point(p, r1 - 0.5 * static_cast<double>(p.n1 * (p.n1 + 1)),
                              r2 - 0.5 * static_cast<double>(p.n2 * (p.n2 + 1)));
}

namespace detail {

UPoint finish_point(UPoint p, double u1, double u2) {
  const double pairs = static_cast<double>(p.n1) * static_cast<double>(p.n2);
  p.u1 = u1;
  p.u2 = u2;
  p.u = std::max(u1, u2) / pairs;
  p.signed_u = u2 / pairs;
  return p;
}

ClassIndex checked_classes(const MatrixD& x,
                           const std::vector<std::string>& labels) {
  if (labels.size() != x.rows()) {
    throw Error(Errc::dimension_mismatch,
                fmt::format("{} labels for {} rows", labels.size(), x.rows()));
  }
  if (x.rows() < 2) {
    throw Error(Errc::too_few_rows, "AvgU needs at least 2 points");
  }
  auto idx = index_classes(labels);
  if (idx.names.size() < 2) {
    throw Error(Errc::too_few_classes,
                fmt::format("AvgU needs at least 2 classes, got {}",
                            idx.names.size()));
  }
  if (std::none_of(idx.sizes.begin(), idx.sizes.end(),
                   [](std::size_t s) { return s >= 2; })) {
    throw Error(Errc::too_few_classes,
                "every class is a singleton; all points skipped");
  }
  return idx;
}

UResult summarize(const ClassIndex& idx,
                  const std::vector<std::optional<UPoint>>& points) {
  UResult res;
  std::vector<double> class_sum(idx.names.size(), 0.0);
  std::vector<std::size_t> class_count(idx.names.size(), 0);
  double total = 0.0;
  for (const auto& p : points) {
    if (!p) {
      ++res.skipped;
      continue;
    }
    total += p->u;
    class_sum[idx.ids[p->index]] += p->u;
    ++class_count[idx.ids[p->index]];
    res.per_point.push_back(*p);
  }
  res.avg_u = total / static_cast<double>(res.per_point.size());
  for (std::size_t c = 0; c < idx.names.size(); ++c) {
    if (class_count[c] > 0) {
      res.per_class[idx.names[c]] =
          class_sum[c] / static_cast<double>(class_count[c]);
    }
  }
  return res;
}

}  // namespace detail

UResult avg_u(const MatrixD& x, const std::vector<std::string>& labels,
              const DistanceSpec& spec) {
  const auto idx = detail::checked_classes(x, labels);
  const std::size_t n = x.rows();
  const detail::DistanceRows rows(x, spec);
  std::vector<std::optional<UPoint>> points(n);
  parallel_for(n, spec.threads, [&](std::size_t i) {
    if (idx.sizes[idx.ids[i]] < 2) return;
    std::vector<double> row(n);
    rows.fill(i, row);
    points[i] = u_point(row, idx.ids, i);
  });
  return detail::summarize(idx, points);
}

UResult avg_u(const PooledMatrix& x, LabelKey key, const DistanceSpec& spec) {
  return avg_u(x.data, label_column(x, key), spec);
}

double auc_binary(std::span<const double> scores,
                  std::span<const bool> positive) {
  if (scores.size() != positive.size()) {
    throw Error(Errc::dimension_mismatch, "scores and labels differ in length");
  }
  const auto ranks = average_ranks(scores);
  double r1 = 0.0;
  std::size_t n1 = 0;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (positive[i]) {
      r1 += ranks[i];
      ++n1;
    }
  }
  const std::size_t n2 = ranks.size() - n1;
  if (n1 == 0 || n2 == 0) {
    throw Error(Errc::too_few_classes, "AUC needs both classes present");
  }
  return (r1 - 0.5 * static_cast<double>(n1 * (n1 + 1))) /
         (static_cast<double>(n1) * static_cast<double>(n2));
}

std::string avgu_metric_name(std::string_view statistic, DistanceMetric m) {
  return fmt::format("{}/{}", statistic, to_string(m));
}

SweepReport u_sweep(const LayerStack& stack, LabelKey key,
                    const DistanceSpec& spec) {
  SweepReport report;
  report.kind = SweepKind::avgu;
  for (std::size_t k = 0; k < stack.layers.size(); ++k) {
    const auto res = avg_u(stack.layers[k], key, spec);
    SweepRow row;
    row.model = stack.model_id;
    row.layer = static_cast<int>(k);
    row.label = std::string(to_string(key));
    row.metric = avgu_metric_name("avg_u", spec.metric);
    row.value = res.avg_u;
    row.n_points = res.per_point.size();
    row.n_skipped = res.skipped;
    report.rows.push_back(std::move(row));
  }
  return report;
}

SweepReport normalization_delta(const LayerStack& stack, LabelKey key,
                                const DistanceSpec& spec) {
  SweepReport report;
  report.kind = SweepKind::avgu;
  for (std::size_t k = 0; k < stack.layers.size(); ++k) {
    const auto& layer = stack.layers[k];
    const auto z = zscore(layer);
    if (z.zero_variance_columns.size() == layer.dim()) {
      throw Error(Errc::degenerate,
                  fmt::format("{} layer {} is constant; normalization undefined",
                              stack.model_id, k));
    }
    const auto raw = avg_u(layer, key, spec);
    const auto norm = avg_u(z.matrix, key, spec);
    SweepRow row;
    row.model = stack.model_id;
    row.layer = static_cast<int>(k);
    row.label = std::string(to_string(key));
    row.metric = avgu_metric_name("avg_u_delta", spec.metric);
    row.value = norm.avg_u - raw.avg_u;
    row.n_points = norm.per_point.size();
    row.n_skipped = norm.skipped;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace repstat
