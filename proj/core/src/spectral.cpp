// core/src/spectral.cpp

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
#include <memory>
#include <mutex>
#include <numbers>

#include <fftw3.h>
#include <fmt/format.h>

#include "repstat/error.hpp"
#include "repstat/features.hpp"
#include "spectral_internal.hpp"

namespace repstat {

namespace {

constexpr double kLogFloor = 1e-10;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// FFTW planning is not thread-safe; execution on a private plan is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

class RealFft {
 public:
  explicit RealFft(std::size_t n) : n_(n) {
    in_ = fftw_alloc_real(n);
    out_ = fftw_alloc_complex(n / 2 + 1);
    std::lock_guard lock(fftw_planner_mutex());
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_, out_, FFTW_ESTIMATE);
  }
  ~RealFft() {
    {
      std::lock_guard lock(fftw_planner_mutex());
      fftw_destroy_plan(plan_);
    }
    fftw_free(in_);
    fftw_free(out_);
  }
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  double* input() { return in_; }

  /// |X_k|^2 for k = 0..n/2.
  void power(std::span<double> out) {
    fftw_execute(plan_);
    for (std::size_t k = 0; k <= n_ / 2; ++k) {
      out[k] = out_[k][0] * out_[k][0] + out_[k][1] * out_[k][1];
    }
  }

 private:
  std::size_t n_;
  double* in_ = nullptr;
  fftw_complex* out_ = nullptr;
  fftw_plan plan_ = nullptr;
};

MatrixD apply_log_filterbank(const MatrixD& power, const MatrixD& bank) {
  MatrixD out(power.rows(), bank.rows());
  for (std::size_t t = 0; t < power.rows(); ++t) {
    const auto p = power.row(t);
    for (std::size_t b = 0; b < bank.rows(); ++b) {
      const auto w = bank.row(b);
      double e = 0.0;
      for (std::size_t k = 0; k < w.size(); ++k) e += w[k] * p[k];
      out(t, b) = std::log(std::max(e, kLogFloor));
    }
  }
  return out;
}

MatrixD log_mel_values(const detail::PowerFrames& pf, std::size_t n_bands) {
  const auto bank =
      mel_filterbank(n_bands, pf.framing.fft_size, pf.sample_rate);
  return apply_log_filterbank(pf.power, bank);
}

}  // namespace

void FeatureConfig::validate() const {
  const auto bad = [](std::string_view why) {
    return Error(Errc::invalid_argument, fmt::format("FeatureConfig: {}", why));
  };
  if (!(hop > 0.0) || !(window_len > hop)) throw bad("need window_len > hop > 0");
  if (!(f0_min > 0.0) || !(f0_min < f0_max)) throw bad("need 0 < f0_min < f0_max");
  if (!(f0_window_len > 0.0)) throw bad("f0_window_len must be positive");
  if (n_mels == 0 || fbank_bins == 0) throw bad("filter bank needs bands");
  if (n_mfcc == 0 || n_mfcc > n_mels) throw bad("need 0 < n_mfcc <= n_mels");
  if (fft_size != 0 && !is_pow2(fft_size)) throw bad("fft_size must be a power of two");
  if (preemphasis < 0.0 || preemphasis >= 1.0) throw bad("preemphasis in [0, 1)");
  if (!(formant_max_bandwidth > 0.0)) throw bad("formant bandwidth must be positive");
  if (!(voicing_threshold > 0.0 && voicing_threshold <= 1.0)) {
    throw bad("voicing_threshold in (0, 1]");
  }
}

Framing framing_for(std::size_t n_samples, double sample_rate,
                    double window_len, double hop, std::size_t fft_size) {
  Framing f;
  f.window = static_cast<std::size_t>(std::lround(window_len * sample_rate));
  f.hop = static_cast<std::size_t>(std::lround(hop * sample_rate));
  if (f.window == 0 || f.hop == 0) {
    throw Error(Errc::invalid_argument, "window and hop must span samples");
  }
  f.fft_size = fft_size == 0 ? next_pow2(f.window) : fft_size;
  if (f.fft_size < f.window) {
    throw Error(Errc::invalid_argument,
                fmt::format("fft_size {} shorter than window {}", f.fft_size,
                            f.window));
  }
  if (n_samples < f.window) {
    throw Error(Errc::signal_too_short,
                fmt::format("{} samples is shorter than one {}-sample window",
                            n_samples, f.window));
  }
  f.frames = (n_samples - f.window) / f.hop + 1;
  return f;
}

std::vector<double> hann_window(std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (n < 2) return w;
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / denom);
  }
  return w;
}

double hz_to_mel(double hz) noexcept { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) noexcept {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

MatrixD mel_filterbank(std::size_t n_bands, std::size_t fft_size,
                       double sample_rate) {
  const std::size_t n_bins = fft_size / 2 + 1;
  const double mel_max = hz_to_mel(sample_rate / 2.0);
  std::vector<double> edges(n_bands + 2);
  for (std::size_t j = 0; j < edges.size(); ++j) {
    edges[j] = mel_max * static_cast<double>(j) / static_cast<double>(n_bands + 1);
  }
  MatrixD bank(n_bands, n_bins, 0.0);
  for (std::size_t k = 0; k < n_bins; ++k) {
    const double mel = hz_to_mel(static_cast<double>(k) * sample_rate /
                                 static_cast<double>(fft_size));
    for (std::size_t b = 0; b < n_bands; ++b) {
      const double lo = edges[b], mid = edges[b + 1], hi = edges[b + 2];
      if (mel >= lo && mel <= mid) {
        bank(b, k) = (mel - lo) / (mid - lo);
      } else if (mel > mid && mel <= hi) {
        bank(b, k) = (hi - mel) / (hi - mid);
      }
    }
  }
  return bank;
}

std::vector<double> mel_band_centers(std::size_t n_bands, double sample_rate) {
  const double mel_max = hz_to_mel(sample_rate / 2.0);
  std::vector<double> centers(n_bands);
  for (std::size_t b = 0; b < n_bands; ++b) {
    centers[b] = mel_to_hz(mel_max * static_cast<double>(b + 1) /
                           static_cast<double>(n_bands + 1));
  }
  return centers;
}

std::vector<double> dct_ii(std::span<const double> in, std::size_t n_out) {
  const std::size_t n = in.size();
  n_out = std::min(n_out, n);
  std::vector<double> out(n_out, 0.0);
  const double s0 = std::sqrt(1.0 / static_cast<double>(n));
  const double sk = std::sqrt(2.0 / static_cast<double>(n));
  for (std::size_t k = 0; k < n_out; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += in[i] * std::cos(std::numbers::pi * static_cast<double>(k) *
                              (2.0 * static_cast<double>(i) + 1.0) /
                              (2.0 * static_cast<double>(n)));
    }
    out[k] = (k == 0 ? s0 : sk) * acc;
  }
  return out;
}

MatrixD deltas(const MatrixD& features) {
  const std::size_t t_max = features.rows();
  MatrixD out(t_max, features.cols(), 0.0);
  if (t_max == 0) return out;
  const auto clamp_row = [&](long t) {
    return static_cast<std::size_t>(std::clamp<long>(t, 0, static_cast<long>(t_max) - 1));
  };
  for (std::size_t t = 0; t < t_max; ++t) {
    for (std::size_t c = 0; c < features.cols(); ++c) {
      double acc = 0.0;
      for (long n = 1; n <= 2; ++n) {
        const long tl = static_cast<long>(t);
        acc += static_cast<double>(n) *
               (features(clamp_row(tl + n), c) - features(clamp_row(tl - n), c));
      }
      out(t, c) = acc / 10.0;
    }
  }
  return out;
}

namespace detail {

double checked_rate(const WaveBuffer& w) {
  if (!(w.sample_rate >= 8000.0 && w.sample_rate <= 48000.0)) {
    throw Error(Errc::unsupported_audio,
                fmt::format("sample rate {} outside 8000..48000 Hz", w.sample_rate));
  }
  return w.sample_rate;
}

PowerFrames power_frames(const WaveBuffer& w, const FeatureConfig& cfg) {
  cfg.validate();
  PowerFrames pf;
  pf.sample_rate = checked_rate(w);
  pf.framing = framing_for(w.samples.size(), pf.sample_rate, cfg.window_len,
                           cfg.hop, cfg.fft_size);
  const auto& fr = pf.framing;
  const auto window = hann_window(fr.window);
  pf.power = MatrixD(fr.frames, fr.fft_size / 2 + 1);

  RealFft fft(fr.fft_size);
  double* buf = fft.input();
  for (std::size_t t = 0; t < fr.frames; ++t) {
    const std::size_t start = t * fr.hop;
    for (std::size_t i = 0; i < fr.window; ++i) {
      buf[i] = w.samples[start + i] * window[i];
    }
    std::fill(buf + fr.window, buf + fr.fft_size, 0.0);
    fft.power(pf.power.row(t));
  }
  return pf;
}

FrameMatrix make_frames(MatrixD values, const Framing& framing,
                        double sample_rate) {
  FrameMatrix m;
  std::vector<float> data(values.size());
  std::transform(values.data().begin(), values.data().end(), data.begin(),
                 [](double v) { return static_cast<float>(v); });
  m.data = MatrixF(values.rows(), values.cols(), std::move(data));
  m.frame_rate = sample_rate / static_cast<double>(framing.hop);
  m.t0 = static_cast<double>(framing.window) / 2.0 / sample_rate;
  return m;
}

}  // namespace detail

FrameMatrix stft_power(const WaveBuffer& w, const FeatureConfig& cfg) {
  auto pf = detail::power_frames(w, cfg);
  return detail::make_frames(std::move(pf.power), pf.framing, pf.sample_rate);
}

double frame_energy(std::span<const float> power_row, std::size_t fft_size) {
  const std::size_t half = fft_size / 2;
  double total = static_cast<double>(power_row[0]) + power_row[half];
  for (std::size_t k = 1; k < half; ++k) total += 2.0 * power_row[k];
  return total / static_cast<double>(fft_size);
}

FrameMatrix log_mel(const WaveBuffer& w, const FeatureConfig& cfg) {
  const auto pf = detail::power_frames(w, cfg);
  return detail::make_frames(log_mel_values(pf, cfg.n_mels), pf.framing,
                             pf.sample_rate);
}

FrameMatrix fbank(const WaveBuffer& w, const FeatureConfig& cfg) {
  const auto pf = detail::power_frames(w, cfg);
  return detail::make_frames(log_mel_values(pf, cfg.fbank_bins), pf.framing,
                             pf.sample_rate);
}

FrameMatrix mfcc(const WaveBuffer& w, const FeatureConfig& cfg) {
  const auto pf = detail::power_frames(w, cfg);
  const auto mel = log_mel_values(pf, cfg.n_mels);
  const std::size_t nc = cfg.n_mfcc;

  MatrixD ceps(mel.rows(), nc);
  for (std::size_t t = 0; t < mel.rows(); ++t) {
    const auto c = dct_ii(mel.row(t), nc);
    std::copy(c.begin(), c.end(), ceps.row(t).begin());
  }
  const auto d1 = deltas(ceps);
  const auto d2 = deltas(d1);

  MatrixD out(mel.rows(), 3 * nc);
  for (std::size_t t = 0; t < mel.rows(); ++t) {
    auto row = out.row(t);
    std::copy(ceps.row(t).begin(), ceps.row(t).end(), row.begin());
    std::copy(d1.row(t).begin(), d1.row(t).end(), row.begin() + nc);
    std::copy(d2.row(t).begin(), d2.row(t).end(), row.begin() + 2 * nc);
  }
  return detail::make_frames(std::move(out), pf.framing, pf.sample_rate);
}

FrameMatrix spectral_centroid(const WaveBuffer& w, const FeatureConfig& cfg) {
  const auto pf = detail::power_frames(w, cfg);
  const double bin_hz = pf.sample_rate / static_cast<double>(pf.framing.fft_size);
  MatrixD out(pf.power.rows(), 1);
  for (std::size_t t = 0; t < pf.power.rows(); ++t) {
    const auto p = pf.power.row(t);
    double total = 0.0, weighted = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      total += p[k];
      weighted += static_cast<double>(k) * bin_hz * p[k];
    }
    out(t, 0) = total < 1e-12 ? 0.0 : weighted / total;
  }
  return detail::make_frames(std::move(out), pf.framing, pf.sample_rate);
}

std::string_view to_string(FeatureKind k) noexcept {
  switch (k) {
    case FeatureKind::mfcc: return "mfcc";
    case FeatureKind::mel: return "mel";
    case FeatureKind::fbank: return "fbank";
    case FeatureKind::f0: return "f0";
    case FeatureKind::formants: return "formants";
    case FeatureKind::centroid: return "centroid";
  }
  return "mfcc";
}

std::optional<FeatureKind> parse_feature_kind(std::string_view text) noexcept {
  for (auto k : {FeatureKind::mfcc, FeatureKind::mel, FeatureKind::fbank,
                 FeatureKind::f0, FeatureKind::formants, FeatureKind::centroid}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

FrameMatrix compute_feature(FeatureKind kind, const WaveBuffer& w,
                            const FeatureConfig& cfg) {
  switch (kind) {
    case FeatureKind::mfcc: return mfcc(w, cfg);
    case FeatureKind::mel: return log_mel(w, cfg);
    case FeatureKind::fbank: return fbank(w, cfg);
    case FeatureKind::f0: return f0_track(w, cfg);
    case FeatureKind::formants: return formants(w, cfg);
    case FeatureKind::centroid: return spectral_centroid(w, cfg);
  }
  throw Error(Errc::invalid_argument, "unknown feature kind");
}

}  // namespace repstat
