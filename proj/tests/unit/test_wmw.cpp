// tests/unit/test_wmw.cpp

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

#include <cmath>
#include <numeric>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "repstat/error.hpp"
#include "repstat/pool.hpp"
#include "repstat/wmw.hpp"

using namespace repstat;
using namespace repstat::testing;

namespace {

std::vector<std::string> labels_for(std::size_t n, std::size_t classes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, classes - 1);
  std::vector<std::string> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = "c" + std::to_string(i < classes ? i : pick(rng));
  return out;
}

}  // namespace

TEST_CASE("average ranks share ties") {
  const std::vector<double> v = {3.0, 1.0, 3.0, 2.0, 3.0};
  CHECK(average_ranks(v) == std::vector<double>{4.0, 1.0, 4.0, 2.0, 4.0});
}

TEST_CASE("distance matrix properties") {
  const auto x = random_matrix(25, 4, 3);
  for (auto m : {DistanceMetric::euclidean, DistanceMetric::cosine}) {
    const auto d = distance_matrix(x, {m, 2});
    for (std::size_t i = 0; i < 25; ++i) {
      CHECK(d(i, i) == 0.0);
      for (std::size_t j = 0; j < 25; ++j) {
        CHECK(d(i, j) == d(j, i));
        CHECK(d(i, j) >= 0.0);
      }
    }
  }
  auto z = x;
  for (std::size_t c = 0; c < 4; ++c) z(3, c) = 0.0;
  try {
    distance_matrix(z, {DistanceMetric::cosine, 1});
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::zero_vector);
  }
}

TEST_CASE("single point statistic on a hand example") {
  // Point 0 of class a; distances: same class {1, 4}, other {2, 3}.
  const std::vector<double> dist = {0.0, 1.0, 4.0, 2.0, 3.0};
  const std::vector<std::size_t> ids = {0, 0, 0, 1, 1};
  const auto p = u_point(dist, ids, 0);
  REQUIRE(p);
  CHECK(p->n1 == 2);
  CHECK(p->n2 == 2);
  CHECK(p->u1 + p->u2 == 4.0);
  // ranks: 1->1, 2->2, 3->3, 4->4; R1 = 1 + 4 = 5, u1 = 2; u2 = 2
  CHECK(p->u1 == 2.0);
  CHECK(p->u == 0.5);
  const std::vector<std::size_t> alone = {0, 1, 1, 1, 1};
  CHECK_FALSE(u_point(dist, alone, 0));
}

TEST_CASE("avg_u equals the counting oracle, ties included") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 20 + seed * 5;
    auto x = random_matrix(n, 3, seed);
    if (seed % 2 == 0) {
      for (auto& v : x.data()) v = std::round(v);
    }
    const auto labels = labels_for(n, 2 + seed % 5, seed);
    for (auto m : {DistanceMetric::euclidean, DistanceMetric::cosine}) {
      if (m == DistanceMetric::cosine && seed % 2 == 0) continue;
      const auto fast = avg_u(x, labels, {m, 2});
      const auto slow = avg_u_oracle(x, labels, {m, 1});
      CHECK(std::abs(fast.avg_u - slow.avg_u) < 1e-12);
      CHECK(fast.skipped == slow.skipped);
      for (const auto& p : fast.per_point) {
        CHECK(p.u >= 0.5);
        CHECK(p.u <= 1.0);
        CHECK(p.u1 + p.u2 == static_cast<double>(p.n1 * p.n2));
      }
    }
  }
}

TEST_CASE("singleton classes are skipped") {
  const auto x = random_matrix(6, 2, 1);
  const std::vector<std::string> labels = {"a", "a", "b", "b", "c", "a"};
  const auto r = avg_u(x, labels);
  CHECK(r.skipped == 1);
  CHECK(r.per_point.size() == 5);
  CHECK_FALSE(r.per_class.contains("c"));
  CHECK_THROWS_AS(avg_u(x, std::vector<std::string>(6, "a")), Error);
  CHECK_THROWS_AS(avg_u(x, {"a", "b", "c", "d", "e", "f"}), Error);
}

TEST_CASE("separated clusters approach one, shuffled labels stay near one half") {
  MatrixD x(200, 2);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<std::string> labels(200);
  for (std::size_t i = 0; i < 200; ++i) {
    labels[i] = i < 100 ? "a" : "b";
    x(i, 0) = g(rng) + (i < 100 ? 0.0 : 10.0);
    x(i, 1) = g(rng);
  }
  CHECK(avg_u(x, labels).avg_u >= 0.99);
  std::shuffle(labels.begin(), labels.end(), rng);
  CHECK(avg_u(x, labels).avg_u <= 0.6);
}

TEST_CASE("auc_binary matches trapezoidal ROC area") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<int> level(0, 6);
    std::vector<double> s(50);
    std::vector<char> pos_storage(50);
    for (std::size_t i = 0; i < 50; ++i) {
      s[i] = level(rng);
      pos_storage[i] = (i % 3 == 0) || (s[i] > 4 && i % 2 == 0);
    }
    std::vector<bool> pv(pos_storage.begin(), pos_storage.end());
    std::unique_ptr<bool[]> pos(new bool[50]);
    for (std::size_t i = 0; i < 50; ++i) pos[i] = pv[i];
    std::span<const bool> ps(pos.get(), 50);
    CHECK(std::abs(auc_binary(s, ps) - roc_auc_trapezoid(s, ps)) < 1e-12);
  }
}

TEST_CASE("u_sweep and normalization_delta") {
  std::vector<SegmentRow> labels;
  for (int i = 0; i < 40; ++i)
    labels.push_back({"u", double(i), i + 1.0, i % 2 ? "aa" : "iy", i % 4 < 2 ? "s1" : "s2", "d", "f"});
  LayerStack stack{"m", {}};
  for (std::uint64_t l = 0; l < 3; ++l) stack.layers.push_back({random_matrix(40, 3, l), labels});
  const auto r = u_sweep(stack, LabelKey::phone, {DistanceMetric::cosine, 1});
  REQUIRE(r.rows.size() == 3);
  CHECK(r.kind == SweepKind::avgu);
  CHECK(r.rows[1].label == "phone");
  CHECK(r.rows[1].metric == avgu_metric_name("avg_u", DistanceMetric::cosine));
  CHECK(r.rows[1].n_points == 40);

  LayerStack normed{"m", {}};
  for (const auto& l : stack.layers) normed.layers.push_back(zscore(l).matrix);
  const auto d = normalization_delta(normed, LabelKey::speaker);
  for (const auto& row : d.rows) CHECK(std::abs(row.value) < 1e-12);
}

TEST_CASE("spec point examples") {
  MatrixD x(4, 1, {0, 1, 10, 11});
  const std::vector<std::string> labels = {"A", "A", "B", "B"};
  const auto d = distance_matrix(x, {});
  std::vector<double> row(d.row(0).begin(), d.row(0).end());
  const std::vector<std::size_t> ids = {0, 0, 1, 1};
  const auto p = u_point(row, ids, 0);
  REQUIRE(p);
  CHECK(p->u1 == 0.0);
  CHECK(p->u2 == 2.0);
  CHECK(p->u == 1.0);
  CHECK(p->signed_u == 1.0);

  const std::vector<double> tied(6, 1.0);
  const std::vector<std::size_t> tid = {0, 0, 0, 1, 1, 1};
  const auto t = u_point(tied, tid, 0);
  CHECK(t->u1 == 3.0);
  CHECK(t->u2 == 3.0);
  CHECK(t->u == 0.5);

  MatrixD tri(2, 2, {0, 0, 3, 4});
  CHECK(distance_matrix(tri, {})(0, 1) == 5.0);
  const auto zeros = distance_matrix(MatrixD(3, 2, 1.5), {});
  for (double v : zeros.data()) CHECK(v == 0.0);

  const auto minimal = avg_u(x, labels);
  const auto oracle = avg_u_oracle(x, labels);
  CHECK(minimal.avg_u == oracle.avg_u);
  CHECK(minimal.per_point.size() == oracle.per_point.size());
}

TEST_CASE("distance matrix matches a naive double loop") {
  const auto x = random_matrix(20, 5, 44);
  const auto d = distance_matrix(x, {});
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 20; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < 5; ++k) acc += (x(i, k) - x(j, k)) * (x(i, k) - x(j, k));
      CHECK(std::abs(d(i, j) - std::sqrt(acc)) < 1e-12);
    }
}

TEST_CASE("AvgU is invariant to isometries and point order") {
  const auto x = random_matrix(90, 4, 61);
  const auto labels = labels_for(90, 3, 62);
  const auto q = random_orthogonal(4, 63);
  auto moved = matmul(x, q);
  for (std::size_t i = 0; i < 90; ++i)
    for (std::size_t c = 0; c < 4; ++c) moved(i, c) += 5.0 * (c + 1);
  const auto base = avg_u(x, labels);
  const auto iso = avg_u(moved, labels);
  for (std::size_t p = 0; p < base.per_point.size(); ++p)
    CHECK(std::abs(base.per_point[p].u - iso.per_point[p].u) < 1e-9);

  std::vector<std::size_t> perm(90);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(64));
  MatrixD px(90, 4);
  std::vector<std::string> pl(90);
  for (std::size_t i = 0; i < 90; ++i) {
    pl[i] = labels[perm[i]];
    for (std::size_t c = 0; c < 4; ++c) px(i, c) = x(perm[i], c);
  }
  const auto shuffled = avg_u(px, pl);
  for (std::size_t i = 0; i < 90; ++i) {
    CHECK(shuffled.per_point[i].u == base.per_point[perm[i]].u);
  }
  CHECK(std::abs(shuffled.avg_u - base.avg_u) < 1e-12);
}

TEST_CASE("strictly increasing transforms of distances leave U_x unchanged") {
  const auto x = random_matrix(40, 3, 71);
  const auto labels = labels_for(40, 4, 72);
  const auto idx = index_classes(labels);
  const auto d = distance_matrix(x, {});
  for (std::size_t i = 0; i < 40; ++i) {
    std::vector<double> row(d.row(i).begin(), d.row(i).end());
    std::vector<double> warped(row);
    for (double& v : warped) v = std::exp(3.0 * v) + v * v * v;
    const auto a = u_point(row, idx.ids, i);
    const auto b = u_point(warped, idx.ids, i);
    REQUIRE(a.has_value() == b.has_value());
    if (a) CHECK(a->u == b->u);
  }
}

TEST_CASE("one-hot class layer gives AvgU of one") {
  const auto labels = labels_for(60, 5, 81);
  const auto idx = index_classes(labels);
  MatrixD onehot(60, 5, 0.0);
  for (std::size_t i = 0; i < 60; ++i) onehot(i, idx.ids[i]) = 1.0;
  CHECK(avg_u(onehot, labels).avg_u == 1.0);
}

TEST_CASE("Gaussian classes 10 sigma apart and their permuted null") {
  auto x = random_matrix(200, 8, 91);
  std::vector<std::string> labels(200);
  for (std::size_t i = 0; i < 200; ++i) {
    labels[i] = i < 100 ? "a" : "b";
    if (i >= 100) x(i, 0) += 10.0;
  }
  CHECK(avg_u(x, labels).avg_u >= 0.99);
  // A single shuffle at N = 200 exceeds 0.55 roughly one time in seven, so
  // the null bound is checked on the mean over shuffles.
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::shuffle(labels.begin(), labels.end(), std::mt19937_64(92 + seed));
    const double u = avg_u(x, labels).avg_u;
    CHECK(u >= 0.5);
    CHECK(u < 0.65);
    total += u;
  }
  CHECK(total / 20.0 <= 0.55);
}

TEST_CASE("noise along the interpolation to class means raises AvgU monotonically") {
  const auto labels = labels_for(120, 4, 101);
  const auto idx = index_classes(labels);
  const auto means = random_matrix(4, 6, 102, 3.0);
  const auto noise = random_matrix(120, 6, 103);
  double prev = 0.0;
  for (int k = 0; k <= 4; ++k) {
    const double t = k / 4.0;
    MatrixD m(120, 6);
    for (std::size_t i = 0; i < 120; ++i)
      for (std::size_t c = 0; c < 6; ++c)
        m(i, c) = (1 - t) * noise(i, c) + t * means(idx.ids[i], c);
    const double u = avg_u(m, labels).avg_u;
    CHECK(u >= prev);
    prev = u;
  }
  CHECK(prev == 1.0);
}

TEST_CASE("normalizing away a dominant noise dimension helps the structured label") {
  auto x = random_matrix(160, 4, 111, 0.3);
  std::vector<SegmentRow> rows(160);
  std::mt19937_64 rng(112);
  std::normal_distribution<double> loud(0.0, 100.0);
  for (std::size_t i = 0; i < 160; ++i) {
    rows[i] = {"u", double(i), i + 1.0, i % 2 ? "aa" : "iy", "s", "d", "f"};
    x(i, 0) += i % 2 ? 1.0 : -1.0;
    x(i, 3) = loud(rng);
  }
  LayerStack stack{"m", {PooledMatrix{x, rows}}};
  const auto d = normalization_delta(stack, LabelKey::phone);
  CHECK(d.rows[0].value > 0.05);

  LayerStack constant{"c", {PooledMatrix{MatrixD(160, 2, 3.0), rows}}};
  CHECK_THROWS_AS(normalization_delta(constant, LabelKey::phone), Error);
}

TEST_CASE("auc_binary spec examples") {
  const std::vector<double> s = {1, 2, 3, 4};
  const bool pos[] = {false, false, true, true};
  CHECK(auc_binary(s, pos) == 1.0);
  const std::vector<double> same(4, 2.0);
  CHECK(auc_binary(same, pos) == 0.5);
  const bool none[] = {false, false, false, false};
  CHECK_THROWS_AS(auc_binary(s, none), Error);
}
