// core/include/repstat/rept.hpp

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

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "repstat/types.hpp"

namespace repstat {

/// Raw REPT payload: shape plus row-major binary32 values.
///
/// Layout (little-endian):
///   "REPT" | u8 version=1 | u8 dtype=0 (binary32) | u8 ndim (1..4) |
///   u8 reserved=0 | ndim x u64 dims | prod(dims) x binary32
struct Tensor {
  std::vector<std::uint64_t> shape;
  std::vector<float> values;
};

inline constexpr std::uint8_t kReptVersion = 1;
inline constexpr std::uint8_t kReptDtypeF32 = 0;

std::vector<std::uint8_t> encode_tensor(const Tensor& t);

/// Parses a REPT byte stream. Every input either yields a tensor with
/// finite values or throws exactly one classified repstat::Error.
Tensor decode_tensor(std::span<const std::uint8_t> bytes);

/// Writes `m.data` as a 2-D REPT file plus `<path>.meta.json` holding
/// utterance_id, frame_rate and t0.
void write_tensor(const FrameMatrix& m, const std::filesystem::path& path);

/// Inverse of write_tensor. 1-D payloads are read as N x 1.
FrameMatrix read_tensor(const std::filesystem::path& path);

std::filesystem::path meta_path(const std::filesystem::path& tensor_path);

}  // namespace repstat
