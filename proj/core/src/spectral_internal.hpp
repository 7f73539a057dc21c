// core/src/spectral_internal.hpp

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
#include <vector>

#include "repstat/features.hpp"

namespace repstat::detail {

/// Samples per second, range-checked.
double checked_rate(const WaveBuffer& w);

/// Power spectra in double precision plus the framing that produced them.
struct PowerFrames {
  MatrixD power;
  Framing framing;
  double sample_rate = 0.0;
};

PowerFrames power_frames(const WaveBuffer& w, const FeatureConfig& cfg);

FrameMatrix make_frames(MatrixD values, const Framing& framing,
                        double sample_rate);

}  // namespace repstat::detail
