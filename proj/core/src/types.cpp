// core/src/types.cpp

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
#include "repstat/types.hpp"

namespace repstat {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::io: return "io";
    case Errc::bad_magic: return "bad_magic";
    case Errc::unsupported_version: return "unsupported_version";
    case Errc::unsupported_dtype: return "unsupported_dtype";
    case Errc::bad_header: return "bad_header";
    case Errc::unsupported_shape: return "unsupported_shape";
    case Errc::truncated: return "truncated";
    case Errc::trailing_data: return "trailing_data";
    case Errc::non_finite: return "non_finite";
    case Errc::empty_input: return "empty_input";
    case Errc::missing_metadata: return "missing_metadata";
    case Errc::malformed_line: return "malformed_line";
    case Errc::invalid_interval: return "invalid_interval";
    case Errc::missing_key: return "missing_key";
    case Errc::dangling_path: return "dangling_path";
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::signal_too_short: return "signal_too_short";
    case Errc::window_too_short: return "window_too_short";
    case Errc::no_segments: return "no_segments";
    case Errc::label_mismatch: return "label_mismatch";
    case Errc::too_few_rows: return "too_few_rows";
    case Errc::degenerate: return "degenerate";
    case Errc::dimension_mismatch: return "dimension_mismatch";
    case Errc::zero_vector: return "zero_vector";
    case Errc::too_few_classes: return "too_few_classes";
    case Errc::unsupported_audio: return "unsupported_audio";
  }
  return "unknown";
}

std::string_view to_string(LabelKey key) noexcept {
  switch (key) {
    case LabelKey::phone: return "phone";
    case LabelKey::speaker: return "speaker";
    case LabelKey::dataset: return "dataset";
    case LabelKey::gender: return "gender";
  }
  return "phone";
}

std::optional<LabelKey> parse_label_key(std::string_view text) noexcept {
  if (text == "phone") return LabelKey::phone;
  if (text == "speaker") return LabelKey::speaker;
  if (text == "dataset") return LabelKey::dataset;
  if (text == "gender") return LabelKey::gender;
  return std::nullopt;
}

const std::string& label_of(const SegmentRow& row, LabelKey key) noexcept {
  switch (key) {
    case LabelKey::speaker: return row.speaker;
    case LabelKey::dataset: return row.dataset;
    case LabelKey::gender: return row.gender;
    case LabelKey::phone: break;
  }
  return row.phone;
}

std::vector<std::string> label_column(const PooledMatrix& m, LabelKey key) {
  std::vector<std::string> out;
  out.reserve(m.labels.size());
  for (const auto& row : m.labels) out.push_back(label_of(row, key));
  return out;
}

namespace {

template <typename T>
void check_finite(std::span<const T> values, std::string_view what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(Errc::non_finite,
                  fmt::format("{}: non-finite value at flat index {}", what, i));
    }
  }
}

}  // namespace

std::pair<std::size_t, std::size_t> frames_in(const FrameMatrix& m,
                                              double start, double end) {
  const std::size_t n = m.data.rows();
  // Estimate from the closed form, then settle against the exact centers
  // so the boundary test matches frame_center() bit for bit.
  const auto first_at_or_after = [&](double t) {
    double guess = std::ceil((t - m.t0) * m.frame_rate);
    std::size_t i = guess <= 0.0 ? 0
                    : guess >= static_cast<double>(n)
                        ? n
                        : static_cast<std::size_t>(guess);
    while (i > 0 && m.frame_center(i - 1) >= t) --i;
    while (i < n && m.frame_center(i) < t) ++i;
    return i;
  };
  const std::size_t first = first_at_or_after(start);
  const std::size_t last = first_at_or_after(end);
  return {first, std::max(first, last)};
}

void require_finite(std::span<const float> values, std::string_view what) {
  check_finite(values, what);
}

void require_finite(std::span<const double> values, std::string_view what) {
  check_finite(values, what);
}

}  // namespace repstat
