// tests/support/oracles.hpp

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

// Independent reference computations used only by tests. None of these
// call into the code paths they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "repstat/matrix.hpp"

namespace repstat::testing {

inline MatrixD random_matrix(std::size_t rows, std::size_t cols,
                             std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, scale);
  MatrixD m(rows, cols);
  for (auto& v : m.data()) v = dist(rng);
  return m;
}

inline MatrixD random_orthogonal(std::size_t d, std::uint64_t seed) {
  const auto a = random_matrix(d, d, seed);
  Eigen::MatrixXd e(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) e(i, j) = a(i, j);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(e);
  Eigen::MatrixXd q = qr.householderQ();
  MatrixD out(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out(i, j) = q(i, j);
  return out;
}

inline MatrixD matmul(const MatrixD& a, const MatrixD& b) {
  MatrixD out(a.rows(), b.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
  return out;
}

inline MatrixD scaled(const MatrixD& a, double s) {
  MatrixD out = a;
  for (auto& v : out.data()) v *= s;
  return out;
}

inline MatrixD naive_gram(const MatrixD& x) {
  MatrixD g(x.rows(), x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.rows(); ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < x.cols(); ++k) acc += x(i, k) * x(j, k);
      g(i, j) = acc;
    }
  return g;
}

inline double naive_pearson(std::span<const double> a, std::span<const double> b) {
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

/// Pearson correlation of the flattened full Gram matrices.
inline double flatten_gram_corr(const MatrixD& x, const MatrixD& y) {
  const auto gx = naive_gram(x);
  const auto gy = naive_gram(y);
  return naive_pearson(gx.data(), gy.data());
}

/// Centered-HSIC CKA computed through explicitly centered Gram matrices.
inline double centered_gram_cka(const MatrixD& x, const MatrixD& y) {
  const std::size_t n = x.rows();
  auto center = [n](MatrixD g) {
    std::vector<double> row(n, 0.0), col(n, 0.0);
    double all = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        row[i] += g(i, j);
        col[j] += g(i, j);
        all += g(i, j);
      }
    const double dn = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        g(i, j) = g(i, j) - row[i] / dn - col[j] / dn + all / (dn * dn);
    return g;
  };
  const auto kx = center(naive_gram(x));
  const auto ky = center(naive_gram(y));
  double xy = 0.0, xx = 0.0, yy = 0.0;
  for (std::size_t i = 0; i < kx.size(); ++i) {
    xy += kx.data()[i] * ky.data()[i];
    xx += kx.data()[i] * kx.data()[i];
    yy += ky.data()[i] * ky.data()[i];
  }
  return xy / std::sqrt(xx * yy);
}

/// Area under the empirical ROC curve by trapezoidal integration over
/// distinct score thresholds (ties move TPR and FPR together).
inline double roc_auc_trapezoid(std::span<const double> scores,
                                std::span<const bool> positive) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  double np = 0.0, nn = 0.0;
  for (bool p : positive) (p ? np : nn) += 1.0;
  double tp = 0.0, fp = 0.0, prev_tpr = 0.0, prev_fpr = 0.0, area = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      (positive[order[j]] ? tp : fp) += 1.0;
      ++j;
    }
    const double tpr = tp / np, fpr = fp / nn;
    area += (fpr - prev_fpr) * (tpr + prev_tpr) / 2.0;
    prev_tpr = tpr;
    prev_fpr = fpr;
    i = j;
  }
  return area;
}

/// Regularized incomplete beta I_x(a, b) by composite Simpson quadrature of
/// t^(a-1) (1-t)^(b-1) on [0, x], for a >= 1 and x bounded away from 1.
inline double incomplete_beta_quadrature(double x, double a, double b,
                                         std::size_t intervals = 200000) {
  const auto f = [&](double t) {
    return std::pow(t, a - 1.0) * std::pow(1.0 - t, b - 1.0);
  };
  const double h = x / static_cast<double>(intervals);
  double acc = f(0.0) + f(x);
  for (std::size_t k = 1; k < intervals; ++k) {
    acc += (k % 2 == 1 ? 4.0 : 2.0) * f(h * static_cast<double>(k));
  }
  const double integral = acc * h / 3.0;
  const double log_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  return integral / std::exp(log_beta);
}

/// Two-sided p for Pearson r over n pairs: I_{df/(df+t^2)}(df/2, 1/2).
inline double t_test_p_oracle(double r, std::size_t n) {
  const double df = static_cast<double>(n - 2);
  const double t2 = r * r * df / (1.0 - r * r);
  return incomplete_beta_quadrature(df / (df + t2), df / 2.0, 0.5);
}

// ---- signal generators ------------------------------------------------

inline std::vector<double> sine(double freq, double amp, double seconds,
                                double sr, double phase = 0.0) {
  const auto n = static_cast<std::size_t>(std::lround(seconds * sr));
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = amp * std::sin(2.0 * std::numbers::pi * freq * static_cast<double>(i) / sr + phase);
  }
  return s;
}

inline std::vector<double> sawtooth(double freq, double amp, double seconds,
                                    double sr) {
  const auto n = static_cast<std::size_t>(std::lround(seconds * sr));
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double phase = std::fmod(freq * static_cast<double>(i) / sr, 1.0);
    s[i] = amp * (2.0 * phase - 1.0);
  }
  return s;
}

inline std::vector<double> white_noise(double seconds, double sr,
                                       std::uint64_t seed, double sd = 0.3) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, sd);
  std::vector<double> s(static_cast<std::size_t>(std::lround(seconds * sr)));
  for (auto& v : s) v = dist(rng);
  return s;
}

struct Resonator {
  double freq;
  double bandwidth;
};

/// Impulse train at f0 filtered by cascaded two-pole resonators, scaled to
/// a peak of `peak`.
inline std::vector<double> source_filter(double f0,
                                         const std::vector<Resonator>& res,
                                         double seconds, double sr,
                                         double peak = 0.8) {
  const auto n = static_cast<std::size_t>(std::lround(seconds * sr));
  std::vector<double> x(n, 0.0);
  const double period = sr / f0;
  for (double t = 0.0; t < static_cast<double>(n); t += period) {
    x[static_cast<std::size_t>(t)] = 1.0;
  }
  for (const auto& r : res) {
    const double radius = std::exp(-std::numbers::pi * r.bandwidth / sr);
    const double c1 = 2.0 * radius * std::cos(2.0 * std::numbers::pi * r.freq / sr);
    const double c2 = -radius * radius;
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = x[i] + (i >= 1 ? c1 * y[i - 1] : 0.0) + (i >= 2 ? c2 * y[i - 2] : 0.0);
    }
    x = std::move(y);
  }
  double mx = 0.0;
  for (double v : x) mx = std::max(mx, std::abs(v));
  if (mx > 0.0)
    for (double& v : x) v *= peak / mx;
  return x;
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace repstat::testing
