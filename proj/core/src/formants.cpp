// core/src/formants.cpp

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
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "repstat/features.hpp"
#include "spectral_internal.hpp"

namespace repstat {

std::vector<double> levinson_durbin(std::span<const double> autocorr,
                                    std::size_t order) {
  if (autocorr.size() < order + 1 || !(autocorr[0] > 0.0)) return {};
  std::vector<double> a(order + 1, 0.0), prev(order + 1, 0.0);
  a[0] = 1.0;
  double err = autocorr[0];
  for (std::size_t i = 1; i <= order; ++i) {
    double acc = autocorr[i];
    for (std::size_t j = 1; j < i; ++j) acc += a[j] * autocorr[i - j];
    const double k = -acc / err;
    if (!std::isfinite(k) || std::abs(k) >= 1.0) return {};
    prev = a;
    for (std::size_t j = 1; j < i; ++j) a[j] = prev[j] + k * prev[i - j];
    a[i] = k;
    err *= 1.0 - k * k;
    if (!(err > 0.0)) return {};
  }
  return {a.begin() + 1, a.end()};
}

std::vector<Resonance> lpc_resonances(std::span<const double> lpc,
                                      double sample_rate) {
  const auto p = static_cast<Eigen::Index>(lpc.size());
  std::vector<Resonance> out;
  if (p == 0) return out;

  // Companion matrix of z^p + a1 z^(p-1) + ... + ap.
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index j = 0; j < p; ++j) companion(0, j) = -lpc[static_cast<std::size_t>(j)];
  for (Eigen::Index i = 1; i < p; ++i) companion(i, i - 1) = 1.0;

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) return out;
  for (const std::complex<double>& z : solver.eigenvalues()) {
    if (z.imag() <= 0.0) continue;
    const double radius = std::abs(z);
    if (!(radius > 0.0)) continue;
    out.push_back({std::arg(z) * sample_rate / (2.0 * std::numbers::pi),
                   -(sample_rate / std::numbers::pi) * std::log(radius)});
  }
  std::sort(out.begin(), out.end(), [](const Resonance& a, const Resonance& b) {
    return a.frequency < b.frequency;
  });
  return out;
}

FrameMatrix formants(const WaveBuffer& w, const FeatureConfig& cfg) {
  cfg.validate();
  const double sr = detail::checked_rate(w);
  const auto fr = framing_for(w.samples.size(), sr, cfg.window_len, cfg.hop,
                              cfg.fft_size);
  const std::size_t order =
      cfg.lpc_order != 0
          ? cfg.lpc_order
          : 2 + static_cast<std::size_t>(std::lround(sr / 1000.0));
  const double nyquist = sr / 2.0;
  const auto window = hann_window(fr.window);

  MatrixD out(fr.frames, 2, 0.0);
  std::vector<double> x(fr.window), r(order + 1);
  for (std::size_t t = 0; t < fr.frames; ++t) {
    const std::size_t start = t * fr.hop;
    for (std::size_t i = 0; i < fr.window; ++i) {
      const std::size_t n = start + i;
      const double previous = n > 0 ? w.samples[n - 1] : 0.0;
      x[i] = (w.samples[n] - cfg.preemphasis * previous) * window[i];
    }
    for (std::size_t lag = 0; lag <= order; ++lag) {
      double acc = 0.0;
      for (std::size_t i = lag; i < fr.window; ++i) acc += x[i] * x[i - lag];
      r[lag] = acc;
    }
    if (!(r[0] > 1e-12)) continue;

    const auto lpc = levinson_durbin(r, order);
    if (lpc.empty()) continue;

    std::vector<double> candidates;
    for (const auto& res : lpc_resonances(lpc, sr)) {
      if (res.bandwidth < cfg.formant_max_bandwidth && res.frequency > 90.0 &&
          res.frequency < nyquist - 50.0) {
        candidates.push_back(res.frequency);
      }
    }
    if (!candidates.empty()) out(t, 0) = candidates[0];
    if (candidates.size() > 1) out(t, 1) = candidates[1];
  }
  return detail::make_frames(std::move(out), fr, sr);
}

}  // namespace repstat
