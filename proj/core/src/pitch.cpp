// core/src/pitch.cpp

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
#include "repstat/features.hpp"
#include "spectral_internal.hpp"

namespace repstat {

namespace {

struct PitchEstimate {
  double f0 = 0.0;
  bool voiced = false;
};

// Normalized cross-correlation of a frame with itself at lag tau over
// the overlapping part.
double nccf(std::span<const double> x, std::size_t tau) {
  const std::size_t n = x.size() - tau;
  double cross = 0.0, e0 = 0.0, e1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cross += x[i] * x[i + tau];
    e0 += x[i] * x[i];
    e1 += x[i + tau] * x[i + tau];
  }
  const double denom = std::sqrt(e0 * e1);
  return denom > 0.0 ? cross / denom : 0.0;
}

PitchEstimate estimate_frame(std::span<const double> frame, double sample_rate,
                             std::size_t lag_min, std::size_t lag_max,
                             double threshold) {
  std::vector<double> x(frame.begin(), frame.end());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double energy = 0.0;
  for (double& v : x) {
    v -= mean;
    energy += v * v;
  }
  if (energy <= 1e-12) return {};

  // r[k] holds the NCCF at lag lag_min - 1 + k.
  const std::size_t lo = lag_min - 1;
  const std::size_t hi = std::min(lag_max + 1, x.size() - 1);
  std::vector<double> r(hi - lo + 1);
  for (std::size_t tau = lo; tau <= hi; ++tau) r[tau - lo] = nccf(x, tau);

  double best = 0.0;
  std::vector<std::size_t> peaks;
  for (std::size_t k = 1; k + 1 < r.size(); ++k) {
    if (r[k] > r[k - 1] && r[k] >= r[k + 1] && r[k] > 0.0) {
      peaks.push_back(k);
      best = std::max(best, r[k]);
    }
  }
  if (peaks.empty()) return {};

  // Prefer the shortest lag that is nearly as strong as the best peak;
  // multiples of the period score almost as high.
  std::size_t k = peaks.front();
  for (std::size_t p : peaks) {
    if (r[p] >= 0.9 * best) {
      k = p;
      break;
    }
  }

  const double a = r[k - 1], b = r[k], c = r[k + 1];
  const double curvature = a - 2.0 * b + c;
  double delta = 0.0;
  double clarity = b;
  if (curvature < 0.0) {
    delta = std::clamp(0.5 * (a - c) / curvature, -0.5, 0.5);
    clarity = b - 0.25 * (a - c) * delta;
  }
  clarity = std::min(clarity, 1.0);
  if (clarity < threshold) return {};
  const double lag = static_cast<double>(lo + k) + delta;
  return {sample_rate / lag, true};
}

}  // namespace

FrameMatrix f0_track(const WaveBuffer& w, const FeatureConfig& cfg) {
  cfg.validate();
  const double sr = detail::checked_rate(w);
  const auto fr =
      framing_for(w.samples.size(), sr, cfg.f0_window_len, cfg.hop, 0);
  const double needed = 2.0 * sr / cfg.f0_min;
  if (static_cast<double>(fr.window) + 1e-9 < needed) {
    throw Error(Errc::window_too_short,
                fmt::format("f0 window of {} samples must cover two periods of "
                            "f0_min={} Hz ({:.1f} samples)",
                            fr.window, cfg.f0_min, needed));
  }
  const auto lag_min = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::floor(sr / cfg.f0_max)));
  const auto lag_max = static_cast<std::size_t>(std::ceil(sr / cfg.f0_min));

  MatrixD out(fr.frames, 2, 0.0);
  const std::span<const double> samples(w.samples);
  for (std::size_t t = 0; t < fr.frames; ++t) {
    const auto est = estimate_frame(samples.subspan(t * fr.hop, fr.window), sr,
                                    lag_min, lag_max, cfg.voicing_threshold);
    if (est.voiced) {
      out(t, 0) = est.f0;
      out(t, 1) = 1.0;
    }
  }
  return detail::make_frames(std::move(out), fr, sr);
}

}  // namespace repstat
