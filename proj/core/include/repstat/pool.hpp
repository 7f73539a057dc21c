// core/include/repstat/pool.hpp

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
#include <set>
#include <string>
#include <vector>

#include "repstat/types.hpp"

namespace repstat {

struct PoolingSpec {
  std::size_t min_frames = 1;
  std::optional<std::set<std::string>> phone_filter;
  std::set<std::string> exclude;
};

/// Default silence/closure markers dropped before analysis.
const std::set<std::string>& default_exclusions();

/// ARPABET vowels, monophthongs and diphthongs.
const std::set<std::string>& vowel_set();

struct PoolResult {
  PooledMatrix matrix;
  std::size_t dropped_filtered = 0;  // phone_filter / exclude
  std::size_t dropped_short = 0;     // fewer than min_frames frames
};

/// True when the segment survives phone_filter and exclude.
bool passes_filter(const SegmentRow& row, const PoolingSpec& spec);

/// Mean of the frames whose centers lie in [start, end), one row per
/// surviving segment of frames.utterance_id, in table order.
PoolResult pool(const FrameMatrix& frames, const SegmentTable& segments,
                const PoolingSpec& spec);

/// Row-wise concatenation; all parts must share the column count.
PooledMatrix concat_rows(const std::vector<PooledMatrix>& parts);

struct ZScoreResult {
  PooledMatrix matrix;
  std::vector<std::size_t> zero_variance_columns;
};

/// Column-wise standardization with population std. Zero-variance
/// columns are centered only and reported.
ZScoreResult zscore(const PooledMatrix& p);

/// Validates that every layer has the same segment label sequence.
LayerStack stack_layers(std::string model_id,
                        std::vector<PooledMatrix> per_layer);

/// Restricts `m` to the rows whose keys appear in `keys`, in that order.
/// Throws Errc::label_mismatch when a key is missing from `m`.
PooledMatrix select_rows(const PooledMatrix& m,
                         const std::vector<SegmentKey>& keys);

/// Keys present in every matrix, in the order of the first.
std::vector<SegmentKey> common_keys(
    const std::vector<const PooledMatrix*>& matrices);

}  // namespace repstat
