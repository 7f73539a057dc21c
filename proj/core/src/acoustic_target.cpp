// core/src/acoustic_target.cpp

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
#include "repstat/features.hpp"

namespace repstat {

std::string_view to_string(AcousticTarget t) noexcept {
  return t == AcousticTarget::f0_centroid ? "f0_centroid" : "f1_f2";
}

namespace {

struct MaskedMean {
  double value = 0.0;
  std::size_t count = 0;
};

template <typename Keep>
MaskedMean mean_in(const FrameMatrix& m, const SegmentRow& seg,
                   std::size_t column, Keep keep) {
  const auto [first, last] = frames_in(m, seg.start, seg.end);
  MaskedMean out;
  double sum = 0.0;
  for (std::size_t i = first; i < last; ++i) {
    if (!keep(m.data.row(i))) continue;
    sum += m.data(i, column);
    ++out.count;
  }
  if (out.count > 0) out.value = sum / static_cast<double>(out.count);
  return out;
}

}  // namespace

TargetResult acoustic_target(const WaveBuffer& w, const FeatureConfig& cfg,
                             const SegmentTable& segments,
                             AcousticTarget which) {
  const double duration = w.duration();
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (segments[i].end > duration + cfg.hop) {
      throw Error(Errc::invalid_interval,
                  fmt::format("segment {} ends at {} s past the {} s waveform",
                              i, segments[i].end, duration));
    }
  }

  TargetResult result;
  std::vector<double> values;
  const auto any = [](std::span<const float>) { return true; };

  if (which == AcousticTarget::f0_centroid) {
    const auto f0 = f0_track(w, cfg);
    const auto centroid = spectral_centroid(w, cfg);
    const auto voiced = [](std::span<const float> row) { return row[1] > 0.5f; };
    for (const auto& seg : segments) {
      const auto pitch = mean_in(f0, seg, 0, voiced);
      const auto cent = mean_in(centroid, seg, 0, any);
      if (pitch.count == 0 || cent.count == 0) {
        ++result.dropped;
        continue;
      }
      values.push_back(pitch.value);
      values.push_back(cent.value);
      result.matrix.labels.push_back(seg);
    }
  } else {
    const auto fm = formants(w, cfg);
    const auto both = [](std::span<const float> row) {
      return row[0] > 0.0f && row[1] > 0.0f;
    };
    for (const auto& seg : segments) {
      const auto f1 = mean_in(fm, seg, 0, both);
      if (f1.count == 0) {
        ++result.dropped;
        continue;
      }
      const auto f2 = mean_in(fm, seg, 1, both);
      values.push_back(f1.value);
      values.push_back(f2.value);
      result.matrix.labels.push_back(seg);
    }
  }
  result.matrix.data = MatrixD(result.matrix.labels.size(), 2, std::move(values));
  return result;
}

}  // namespace repstat
