// core/src/cka.cpp

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

#include "repstat/cka.hpp"

#include <cmath>

#include <fmt/format.h>

#include "repstat/error.hpp"
#include "repstat/parallel.hpp"
#include "kernels.hpp"

namespace repstat {

std::string_view to_string(CkaVariant v) noexcept {
  return v == CkaVariant::literal_corr ? "literal" : "centered";
}

std::optional<CkaVariant> parse_cka_variant(std::string_view text) noexcept {
  if (text == "literal" || text == "literal_corr") return CkaVariant::literal_corr;
  if (text == "centered" || text == "centered_feature") {
    return CkaVariant::centered_feature;
  }
  return std::nullopt;
}

namespace {

using detail::dot;

/// Mean of all N^2 Gram entries: |sum_i x_i|^2 / N^2.
double gram_mean(const MatrixD& x) {
  std::vector<double> s(x.cols(), 0.0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto r = x.row(i);
    for (std::size_t c = 0; c < x.cols(); ++c) s[c] += r[c];
  }
  const double n = static_cast<double>(x.rows());
  return dot(s, s) / (n * n);
}

struct RowMoments {
  double xy = 0.0, xx = 0.0, yy = 0.0;
};

/// Pearson correlation of vec(X X^T) and vec(Y Y^T). Rows are processed in
/// blocks; each row's contribution is summed in a fixed order and rows are
/// reduced by index, so the result does not depend on blocking or threads.
double literal_corr(const MatrixD& x, const MatrixD& y,
                    const CkaOptions& options) {
  const std::size_t n = x.rows();
  const double mx = gram_mean(x);
  const double my = gram_mean(y);

  std::vector<RowMoments> partial(n);
  const std::size_t block = std::max<std::size_t>(1, options.block_rows);
  const std::size_t n_blocks = (n + block - 1) / block;
  parallel_for(n_blocks, options.threads, [&](std::size_t b) {
    const std::size_t lo = b * block, hi = std::min(n, lo + block);
    for (std::size_t i = lo; i < hi; ++i) {
      const auto xi = x.row(i);
      const auto yi = y.row(i);
      const double a0 = dot(xi, xi) - mx;
      const double b0 = dot(yi, yi) - my;
      RowMoments off;
      for (std::size_t j = i + 1; j < n; ++j) {
        const double a = dot(xi, x.row(j)) - mx;
        const double bb = dot(yi, y.row(j)) - my;
        off.xy += a * bb;
        off.xx += a * a;
        off.yy += bb * bb;
      }
      partial[i] = {a0 * b0 + 2.0 * off.xy, a0 * a0 + 2.0 * off.xx,
                    b0 * b0 + 2.0 * off.yy};
    }
  });

  RowMoments total;
  for (const auto& p : partial) {
    total.xy += p.xy;
    total.xx += p.xx;
    total.yy += p.yy;
  }
  if (!(total.xx > 0.0) || !(total.yy > 0.0)) {
    throw Error(Errc::degenerate, "Gram matrix has zero variance");
  }
  return total.xy / std::sqrt(total.xx * total.yy);
}

/// Column-centered transpose: out(c, r) = x(r, c) - mean_c.
MatrixD centered_transpose(const MatrixD& x) {
  MatrixD out(x.cols(), x.rows());
  const double n = static_cast<double>(x.rows());
  for (std::size_t c = 0; c < x.cols(); ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < x.rows(); ++r) mean += x(r, c);
    mean /= n;
    for (std::size_t r = 0; r < x.rows(); ++r) out(c, r) = x(r, c) - mean;
  }
  return out;
}

/// Squared Frobenius norm of A B^T where A, B hold features as rows.
double cross_frobenius2(const MatrixD& a, const MatrixD& b,
                        const CkaOptions& options) {
  const bool self = &a == &b;
  std::vector<double> partial(a.rows(), 0.0);
  parallel_for(a.rows(), options.threads, [&](std::size_t i) {
    if (self) {
      const double d = dot(a.row(i), a.row(i));
      double off = 0.0;
      for (std::size_t j = i + 1; j < a.rows(); ++j) {
        const double v = dot(a.row(i), a.row(j));
        off += v * v;
      }
      partial[i] = d * d + 2.0 * off;
      return;
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < b.rows(); ++j) {
      const double v = dot(a.row(i), b.row(j));
      acc += v * v;
    }
    partial[i] = acc;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

double centered_feature(const MatrixD& x, const MatrixD& y,
                        const CkaOptions& options) {
  const auto xt = centered_transpose(x);
  const auto yt = centered_transpose(y);
  const double xx = std::sqrt(cross_frobenius2(xt, xt, options));
  const double yy = std::sqrt(cross_frobenius2(yt, yt, options));
  if (!(xx > 0.0) || !(yy > 0.0)) {
    throw Error(Errc::degenerate, "representation is constant across rows");
  }
  const double xy = cross_frobenius2(xt, yt, options);
  return xy / (xx * yy);
}

}  // namespace

MatrixD gram(const MatrixD& x) {
  if (x.rows() < 2) {
    throw Error(Errc::too_few_rows,
                fmt::format("gram needs at least 2 rows, got {}", x.rows()));
  }
  const std::size_t n = x.rows();
  MatrixD g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      g(i, j) = g(j, i) = dot(x.row(i), x.row(j));
    }
  }
  return g;
}

double linear_cka(const MatrixD& x, const MatrixD& y, CkaVariant variant,
                  const CkaOptions& options) {
  if (x.rows() != y.rows()) {
    throw Error(Errc::dimension_mismatch,
                fmt::format("CKA row counts differ: {} vs {}", x.rows(), y.rows()));
  }
  if (x.rows() < 3) {
    throw Error(Errc::too_few_rows,
                fmt::format("CKA needs at least 3 rows, got {}", x.rows()));
  }
  if (x.cols() == 0 || y.cols() == 0) {
    throw Error(Errc::degenerate, "CKA input has no columns");
  }
  return variant == CkaVariant::literal_corr ? literal_corr(x, y, options)
                                             : centered_feature(x, y, options);
}

double linear_cka(const PooledMatrix& x, const PooledMatrix& y,
                  CkaVariant variant, const CkaOptions& options) {
  if (x.labels.size() == y.labels.size()) {
    for (std::size_t i = 0; i < x.labels.size(); ++i) {
      if (key_of(x.labels[i]) != key_of(y.labels[i])) {
        throw Error(Errc::label_mismatch,
                    fmt::format("CKA rows differ at {}: {} vs {}", i,
                                x.labels[i].utterance_id, y.labels[i].utterance_id));
      }
    }
  }
  return linear_cka(x.data, y.data, variant, options);
}

SweepReport cka_sweep(const LayerStack& stack, const PooledMatrix& target,
                      std::string_view target_name, CkaVariant variant,
                      const std::vector<NamedMatrix>& baselines,
                      const CkaOptions& options) {
  SweepReport report;
  report.kind = SweepKind::cka;
  const auto check = [&](const PooledMatrix& m, std::string_view what) {
    if (m.labels != target.labels) {
      throw Error(Errc::label_mismatch,
                  fmt::format("{} rows are not aligned with the target", what));
    }
  };
  const auto emit = [&](const std::string& model, int layer,
                        const PooledMatrix& m) {
    SweepRow row;
    row.model = model;
    row.layer = layer;
    row.metric = std::string(target_name);
    row.variant = std::string(to_string(variant));
    row.value = linear_cka(m, target, variant, options);
    row.n_points = m.rows();
    report.rows.push_back(std::move(row));
  };
  for (std::size_t k = 0; k < stack.layers.size(); ++k) {
    check(stack.layers[k], fmt::format("{} layer {}", stack.model_id, k));
    emit(stack.model_id, static_cast<int>(k), stack.layers[k]);
  }
  for (const auto& b : baselines) {
    check(*b.matrix, b.name);
    emit(b.name, 0, *b.matrix);
  }
  return report;
}

}  // namespace repstat
