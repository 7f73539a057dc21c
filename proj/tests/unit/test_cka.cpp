// tests/unit/test_cka.cpp

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
#include <numeric>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "repstat/cka.hpp"
#include "repstat/error.hpp"

using namespace repstat;
using namespace repstat::testing;

TEST_CASE("gram matches the naive product") {
  const auto x = random_matrix(17, 5, 1);
  const auto g = gram(x);
  const auto n = naive_gram(x);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(g.data()[i] == doctest::Approx(n.data()[i]).epsilon(1e-13));
}

TEST_CASE("literal variant equals the flattened Gram correlation") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto x = random_matrix(40 + seed * 7, 6, seed);
    const auto y = random_matrix(40 + seed * 7, 3 + seed, seed + 100);
    const double oracle = flatten_gram_corr(x, y);
    for (std::size_t block : {1u, 7u, 64u, 1000u}) {
      for (std::size_t threads : {1u, 3u}) {
        const double got =
            linear_cka(x, y, CkaVariant::literal_corr, {block, threads});
        CHECK(std::abs(got - oracle) < 1e-10);
      }
    }
  }
}

TEST_CASE("centered variant equals centered-Gram HSIC ratio") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto x = random_matrix(50, 4 + seed, seed);
    const auto y = random_matrix(50, 9, seed + 50);
    CHECK(std::abs(linear_cka(x, y, CkaVariant::centered_feature) -
                   centered_gram_cka(x, y)) < 1e-10);
  }
}

TEST_CASE("self similarity and invariances") {
  const auto x = random_matrix(120, 16, 3);
  const auto q = random_orthogonal(16, 4);
  const auto y = random_matrix(120, 5, 5);
  for (auto v : {CkaVariant::literal_corr, CkaVariant::centered_feature}) {
    CHECK(std::abs(linear_cka(x, x, v) - 1.0) < 1e-9);
    const double base = linear_cka(x, y, v);
    CHECK(std::abs(linear_cka(matmul(x, q), y, v) - base) < 1e-8);
    CHECK(std::abs(linear_cka(scaled(x, 3.7), y, v) - base) < 1e-8);
    CHECK(std::abs(linear_cka(y, x, v) - base) < 1e-12);
  }
}

TEST_CASE("input validation") {
  const auto x = random_matrix(10, 3, 1);
  CHECK_THROWS_AS(linear_cka(x, random_matrix(11, 3, 2), CkaVariant::literal_corr), Error);
  CHECK_THROWS_AS(linear_cka(MatrixD(1, 3, 1.0), MatrixD(1, 3, 1.0),
                             CkaVariant::literal_corr), Error);
  MatrixD constant(10, 3, 2.0);
  try {
    linear_cka(constant, x, CkaVariant::centered_feature);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::degenerate);
  }
  auto bad = x;
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(linear_cka(bad, x, CkaVariant::literal_corr), Error);
  CHECK(parse_cka_variant("centered") == CkaVariant::centered_feature);
  CHECK(parse_cka_variant("literal") == CkaVariant::literal_corr);
  CHECK_FALSE(parse_cka_variant("rbf"));
}

TEST_CASE("PooledMatrix overload rejects misaligned rows") {
  SegmentRow a{"u", 0, 1, "aa", "", "", ""};
  SegmentRow b{"u", 1, 2, "iy", "", "", ""};
  SegmentRow c{"u", 2, 3, "uw", "", "", ""};
  PooledMatrix x{random_matrix(3, 2, 1), {a, b, c}};
  PooledMatrix y{random_matrix(3, 2, 2), {a, c, b}};
  CHECK_THROWS_AS(linear_cka(x, y, CkaVariant::literal_corr), Error);
  y.labels = x.labels;
  CHECK(std::isfinite(linear_cka(x, y, CkaVariant::literal_corr)));
}

TEST_CASE("cka_sweep emits one row per layer then baselines") {
  std::vector<SegmentRow> labels;
  for (int i = 0; i < 30; ++i) labels.push_back({"u", double(i), i + 1.0, "aa", "", "", ""});
  LayerStack stack{"m", {}};
  for (std::uint64_t l = 0; l < 4; ++l) stack.layers.push_back({random_matrix(30, 4, l), labels});
  PooledMatrix target{random_matrix(30, 2, 99), labels};
  PooledMatrix mfcc{random_matrix(30, 39, 98), labels};
  const auto r = cka_sweep(stack, target, "f0_centroid", CkaVariant::literal_corr,
                           {{"mfcc", &mfcc}});
  REQUIRE(r.rows.size() == 5);
  CHECK(r.kind == SweepKind::cka);
  CHECK(r.rows[3].layer == 3);
  CHECK(r.rows[3].model == "m");
  CHECK(r.rows[4].model == "mfcc");
  CHECK(r.rows[4].layer == 0);
  CHECK(r.rows[0].metric == "f0_centroid");
  CHECK(r.rows[0].variant == "literal");
  CHECK(r.rows[0].n_points == 30);
  CHECK(r.rows[2].value == linear_cka(stack.layers[2], target, CkaVariant::literal_corr));
}

TEST_CASE("small gram examples") {
  const auto g = gram(MatrixD(2, 2, {1, 0, 0, 1}));
  CHECK(g == MatrixD(2, 2, {1, 0, 0, 1}));
  const auto d = gram(MatrixD(2, 3, {1, 2, 3, 1, 2, 3}));
  for (double v : d.data()) CHECK(v == 14.0);
  CHECK_THROWS_AS(gram(MatrixD(1, 3, 1.0)), Error);
}

TEST_CASE("row permutation applied to both inputs leaves CKA unchanged") {
  const auto x = random_matrix(60, 7, 21);
  const auto y = random_matrix(60, 3, 22);
  std::vector<std::size_t> perm(60);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(23));
  MatrixD px(60, 7), py(60, 3);
  for (std::size_t i = 0; i < 60; ++i) {
    for (std::size_t c = 0; c < 7; ++c) px(i, c) = x(perm[i], c);
    for (std::size_t c = 0; c < 3; ++c) py(i, c) = y(perm[i], c);
  }
  for (auto v : {CkaVariant::literal_corr, CkaVariant::centered_feature}) {
    CHECK(std::abs(linear_cka(px, py, v) - linear_cka(x, y, v)) < 1e-12);
    const double c = linear_cka(x, y, v);
    CHECK(c <= 1.0 + 1e-12);
    if (v == CkaVariant::centered_feature) CHECK(c >= 0.0);
  }
}

TEST_CASE("sweep toward the target rises and peaks at one") {
  std::vector<SegmentRow> labels;
  for (int i = 0; i < 80; ++i) labels.push_back({"u", double(i), i + 1.0, "aa", "", "", ""});
  const auto target = random_matrix(80, 4, 31);
  const auto noise = random_matrix(80, 4, 32);
  LayerStack stack{"interp", {}};
  for (int k = 0; k <= 5; ++k) {
    const double t = k / 5.0;
    MatrixD m(80, 4);
    for (std::size_t i = 0; i < m.size(); ++i)
      m.data()[i] = (1 - t) * noise.data()[i] + t * target.data()[i];
    stack.layers.push_back({m, labels});
  }
  PooledMatrix tgt{target, labels};
  for (auto v : {CkaVariant::literal_corr, CkaVariant::centered_feature}) {
    const auto r = cka_sweep(stack, tgt, "t", v);
    for (std::size_t k = 1; k < r.rows.size(); ++k) CHECK(r.rows[k].value >= r.rows[k - 1].value);
    CHECK(std::abs(r.rows.back().value - 1.0) < 1e-12);
  }
  LayerStack same{"same", {stack.layers[2], stack.layers[2], stack.layers[2]}};
  const auto flat = cka_sweep(same, tgt, "t", CkaVariant::literal_corr);
  CHECK(flat.rows[0].value == flat.rows[2].value);
}
