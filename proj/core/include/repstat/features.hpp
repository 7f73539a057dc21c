// core/include/repstat/features.hpp

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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "repstat/types.hpp"
#include "repstat/wav.hpp"

namespace repstat {

struct FeatureConfig {
  double window_len = 0.025;  // seconds
  double hop = 0.010;         // seconds
  std::size_t fft_size = 0;   // 0: next power of two >= window samples
  std::size_t n_mels = 80;
  std::size_t n_mfcc = 13;
  std::size_t fbank_bins = 23;
  double preemphasis = 0.97;
  double f0_min = 50.0;
  double f0_max = 450.0;
  double f0_window_len = 0.040;  // must span two periods of f0_min
  double voicing_threshold = 0.5;
  std::size_t lpc_order = 0;  // 0: 2 + round(sample_rate / 1000)
  double formant_max_bandwidth = 400.0;

  /// Throws Errc::invalid_argument on inconsistent settings.
  void validate() const;
};

/// Resolved sample counts for one waveform.
struct Framing {
  std::size_t window = 0;
  std::size_t hop = 0;
  std::size_t fft_size = 0;
  std::size_t frames = 0;
};

Framing framing_for(std::size_t n_samples, double sample_rate,
                    double window_len, double hop, std::size_t fft_size);

std::vector<double> hann_window(std::size_t n);

double hz_to_mel(double hz) noexcept;
double mel_to_hz(double mel) noexcept;

/// Triangular HTK-mel filters spanning 0 Hz..Nyquist; n_bands x (fft/2+1).
MatrixD mel_filterbank(std::size_t n_bands, std::size_t fft_size,
                       double sample_rate);

/// Center frequency (Hz) of each filter of mel_filterbank.
std::vector<double> mel_band_centers(std::size_t n_bands, double sample_rate);

/// Orthonormal DCT-II of `in`, first `n_out` coefficients.
std::vector<double> dct_ii(std::span<const double> in, std::size_t n_out);

/// +-2 frame regression deltas with edge replication; same shape as input.
MatrixD deltas(const MatrixD& features);

/// Per-frame |X_k|^2 for k = 0..fft/2 of the Hann-windowed frame.
FrameMatrix stft_power(const WaveBuffer& w, const FeatureConfig& cfg);

/// Windowed time-domain energy recovered from one power row (Parseval):
/// (P_0 + P_{K/2} + 2 * sum of interior bins) / K.
double frame_energy(std::span<const float> power_row, std::size_t fft_size);

FrameMatrix log_mel(const WaveBuffer& w, const FeatureConfig& cfg);
FrameMatrix mfcc(const WaveBuffer& w, const FeatureConfig& cfg);
FrameMatrix fbank(const WaveBuffer& w, const FeatureConfig& cfg);

/// Columns: f0 (Hz, 0 when unvoiced), voicing flag (0/1).
FrameMatrix f0_track(const WaveBuffer& w, const FeatureConfig& cfg);

/// Columns: F1, F2 in Hz; (0, 0) for frames without an estimate.
FrameMatrix formants(const WaveBuffer& w, const FeatureConfig& cfg);

/// Columns: centroid in Hz.
FrameMatrix spectral_centroid(const WaveBuffer& w, const FeatureConfig& cfg);

/// Autocorrelation LPC by Levinson-Durbin. Returns a[1..order] of
/// A(z) = 1 + sum a_k z^-k, or empty when the recursion breaks down.
std::vector<double> levinson_durbin(std::span<const double> autocorr,
                                    std::size_t order);

/// Candidate (frequency, bandwidth) pairs from LPC coefficients, before
/// any filtering.
struct Resonance {
  double frequency = 0.0;
  double bandwidth = 0.0;
};
std::vector<Resonance> lpc_resonances(std::span<const double> lpc,
                                      double sample_rate);

enum class AcousticTarget { f0_centroid, f1_f2 };

std::string_view to_string(AcousticTarget t) noexcept;

struct TargetResult {
  PooledMatrix matrix;
  std::size_t dropped = 0;
};

/// Per-segment (F0, centroid) or (F1, F2) means over frames whose centers
/// lie in [start, end). F0 averages voiced frames only; formants average
/// frames with both values present.
TargetResult acoustic_target(const WaveBuffer& w, const FeatureConfig& cfg,
                             const SegmentTable& segments,
                             AcousticTarget which);

/// Named frame-level feature kinds accepted by the CLI and manifests.
enum class FeatureKind { mfcc, mel, fbank, f0, formants, centroid };

std::string_view to_string(FeatureKind k) noexcept;
std::optional<FeatureKind> parse_feature_kind(std::string_view text) noexcept;
FrameMatrix compute_feature(FeatureKind kind, const WaveBuffer& w,
                            const FeatureConfig& cfg);

}  // namespace repstat
