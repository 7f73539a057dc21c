// core/src/pool.cpp

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

#include "repstat/pool.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "repstat/error.hpp"
#include "repstat/segments.hpp"

namespace repstat {

const std::set<std::string>& default_exclusions() {
  static const std::set<std::string> s = {"h#", "pau", "epi", "sil", "sp", "spn"};
  return s;
}

const std::set<std::string>& vowel_set() {
  static const std::set<std::string> s = {"iy", "ih", "eh", "ae", "ah",
                                          "aa", "ao", "uh", "uw", "er",
                                          "ey", "ay", "oy", "aw", "ow"};
  return s;
}

bool passes_filter(const SegmentRow& row, const PoolingSpec& spec) {
  const auto phone = normalize_phone(row.phone);
  if (spec.exclude.contains(phone) || spec.exclude.contains(row.phone)) {
    return false;
  }
  if (spec.phone_filter && !spec.phone_filter->contains(phone)) return false;
  return true;
}

PoolResult pool(const FrameMatrix& frames, const SegmentTable& segments,
                const PoolingSpec& spec) {
  if (spec.min_frames < 1) {
    throw Error(Errc::invalid_argument, "min_frames must be at least 1");
  }
  PoolResult result;
  const std::size_t dim = frames.data.cols();
  std::vector<double> values;
  std::vector<double> acc(dim);
  for (const auto& seg : segments) {
    if (seg.utterance_id != frames.utterance_id) continue;
    if (!passes_filter(seg, spec)) {
      ++result.dropped_filtered;
      continue;
    }
    const auto [first, last] = frames_in(frames, seg.start, seg.end);
    if (last - first < spec.min_frames) {
      ++result.dropped_short;
      continue;
    }
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t i = first; i < last; ++i) {
      const auto row = frames.data.row(i);
      for (std::size_t c = 0; c < dim; ++c) acc[c] += row[c];
    }
    const double count = static_cast<double>(last - first);
    for (double v : acc) values.push_back(v / count);
    result.matrix.labels.push_back(seg);
  }
  if (result.matrix.labels.empty()) {
    throw Error(Errc::no_segments,
                fmt::format("utterance {}: no segments survived pooling "
                            "({} filtered, {} too short)",
                            frames.utterance_id, result.dropped_filtered,
                            result.dropped_short));
  }
  result.matrix.data = MatrixD(result.matrix.labels.size(), dim, std::move(values));
  return result;
}

PooledMatrix concat_rows(const std::vector<PooledMatrix>& parts) {
  PooledMatrix out;
  if (parts.empty()) return out;
  const std::size_t dim = parts.front().dim();
  std::vector<double> values;
  for (const auto& p : parts) {
    if (p.dim() != dim) {
      throw Error(Errc::dimension_mismatch,
                  fmt::format("cannot stack {}-dim rows onto {}-dim rows",
                              p.dim(), dim));
    }
    values.insert(values.end(), p.data.data().begin(), p.data.data().end());
    out.labels.insert(out.labels.end(), p.labels.begin(), p.labels.end());
  }
  out.data = MatrixD(out.labels.size(), dim, std::move(values));
  return out;
}

ZScoreResult zscore(const PooledMatrix& p) {
  const std::size_t n = p.rows();
  if (n < 2) {
    throw Error(Errc::too_few_rows,
                fmt::format("zscore needs at least 2 rows, got {}", n));
  }
  ZScoreResult out;
  out.matrix = p;
  auto& m = out.matrix.data;
  const double count = static_cast<double>(n);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < n; ++r) mean += m(r, c);
    mean /= count;
    double var = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double d = m(r, c) - mean;
      var += d * d;
    }
    const double sd = std::sqrt(var / count);
    // A column whose spread is at rounding level of its magnitude is constant.
    const bool constant = !(sd > 1e-12 * std::max(1.0, std::abs(mean)));
    if (constant) out.zero_variance_columns.push_back(c);
    for (std::size_t r = 0; r < n; ++r) {
      m(r, c) = constant ? 0.0 : (m(r, c) - mean) / sd;
    }
  }
  return out;
}

LayerStack stack_layers(std::string model_id,
                        std::vector<PooledMatrix> per_layer) {
  if (per_layer.empty()) throw Error(Errc::empty_input, "no layers to stack");
  const auto& ref = per_layer.front();
  for (std::size_t k = 0; k < per_layer.size(); ++k) {
    const auto& layer = per_layer[k];
    if (layer.data.rows() != layer.labels.size()) {
      throw Error(Errc::label_mismatch,
                  fmt::format("layer {}: {} rows but {} labels", k,
                              layer.data.rows(), layer.labels.size()));
    }
    if (layer.labels != ref.labels) {
      throw Error(Errc::label_mismatch,
                  fmt::format("layer {}: segment labels differ from layer 0", k));
    }
  }
  return LayerStack{std::move(model_id), std::move(per_layer)};
}

PooledMatrix select_rows(const PooledMatrix& m,
                         const std::vector<SegmentKey>& keys) {
  std::map<SegmentKey, std::size_t> index;
  for (std::size_t r = 0; r < m.labels.size(); ++r) {
    index.emplace(key_of(m.labels[r]), r);
  }
  PooledMatrix out;
  std::vector<double> values;
  values.reserve(keys.size() * m.dim());
  for (const auto& k : keys) {
    const auto it = index.find(k);
    if (it == index.end()) {
      throw Error(Errc::label_mismatch,
                  fmt::format("segment {} [{}, {}) not present", k.utterance_id,
                              k.start, k.end));
    }
    const auto row = m.data.row(it->second);
    values.insert(values.end(), row.begin(), row.end());
    out.labels.push_back(m.labels[it->second]);
  }
  out.data = MatrixD(keys.size(), m.dim(), std::move(values));
  return out;
}

std::vector<SegmentKey> common_keys(
    const std::vector<const PooledMatrix*>& matrices) {
  std::vector<SegmentKey> out;
  if (matrices.empty()) return out;
  std::map<SegmentKey, std::size_t> seen;
  for (const auto* m : matrices) {
    std::set<SegmentKey> unique;
    for (const auto& l : m->labels) unique.insert(key_of(l));
    for (const auto& k : unique) ++seen[k];
  }
  std::set<SegmentKey> emitted;
  for (const auto& l : matrices.front()->labels) {
    auto k = key_of(l);
    if (seen[k] == matrices.size() && emitted.insert(k).second) {
      out.push_back(std::move(k));
    }
  }
  return out;
}

}  // namespace repstat
