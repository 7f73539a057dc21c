// core/include/repstat/wav.hpp

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

#include <filesystem>
#include <vector>

namespace repstat {

/// Mono waveform, samples nominally in [-1, 1].
struct WaveBuffer {
  std::vector<double> samples;
  double sample_rate = 16000.0;

  double duration() const noexcept {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

/// Reads 16-bit PCM mono RIFF/WAVE.
WaveBuffer read_wav(const std::filesystem::path& path);

/// Writes 16-bit PCM mono; samples are clipped to [-1, 1].
void write_wav(const WaveBuffer& wave, const std::filesystem::path& path);

}  // namespace repstat
