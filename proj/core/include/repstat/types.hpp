// core/include/repstat/types.hpp

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
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "repstat/matrix.hpp"

namespace repstat {

/// Frame-level features or layer activations for one utterance.
/// Frame i is centered at t0 + i / frame_rate seconds.
struct FrameMatrix {
  std::string utterance_id;
  MatrixF data;
  double frame_rate = 100.0;
  double t0 = 0.0;

  double frame_center(std::size_t i) const {
    return t0 + static_cast<double>(i) / frame_rate;
  }
};

/// Half-open index range [first, last) of frames whose centers lie in
/// [start, end).
std::pair<std::size_t, std::size_t> frames_in(const FrameMatrix& m,
                                              double start, double end);

/// One aligned phone instance.
struct SegmentRow {
  std::string utterance_id;
  double start = 0.0;
  double end = 0.0;
  std::string phone;
  std::string speaker;
  std::string dataset;
  std::string gender;

  friend bool operator==(const SegmentRow&, const SegmentRow&) = default;
};

using SegmentTable = std::vector<SegmentRow>;

enum class LabelKey { phone, speaker, dataset, gender };

std::string_view to_string(LabelKey key) noexcept;
std::optional<LabelKey> parse_label_key(std::string_view text) noexcept;
const std::string& label_of(const SegmentRow& row, LabelKey key) noexcept;

/// Identity of a pooled row across layers and targets.
struct SegmentKey {
  std::string utterance_id;
  double start = 0.0;
  double end = 0.0;

  friend auto operator<=>(const SegmentKey&, const SegmentKey&) = default;
};

inline SegmentKey key_of(const SegmentRow& row) {
  return {row.utterance_id, row.start, row.end};
}

/// Segment-by-dimension matrix with one label record per row.
struct PooledMatrix {
  MatrixD data;
  std::vector<SegmentRow> labels;

  std::size_t rows() const noexcept { return data.rows(); }
  std::size_t dim() const noexcept { return data.cols(); }
};

/// Pooled matrices for layers 0..L of one model; layer 0 is the input
/// projection feeding the transformer stack.
struct LayerStack {
  std::string model_id;
  std::vector<PooledMatrix> layers;

  std::size_t size() const noexcept { return layers.size(); }
};

/// Extract one label column as strings.
std::vector<std::string> label_column(const PooledMatrix& m, LabelKey key);

/// Throws Errc::non_finite naming `what` if any entry is NaN or Inf.
void require_finite(std::span<const float> values, std::string_view what);
void require_finite(std::span<const double> values, std::string_view what);

}  // namespace repstat
