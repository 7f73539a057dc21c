// tests/unit/test_rept.cpp

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

#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <random>

#include <doctest.h>

#include "repstat/error.hpp"
#include "repstat/rept.hpp"
#include "tmpdir.hpp"

using namespace repstat;

namespace {

std::vector<std::uint8_t> slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Errc decode_error(const std::vector<std::uint8_t>& bytes) {
  try {
    decode_tensor(bytes);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a decode error");
  return Errc::io;
}

std::vector<std::uint8_t> header(std::uint8_t ndim, std::initializer_list<std::uint64_t> dims) {
  std::vector<std::uint8_t> b = {'R', 'E', 'P', 'T', 1, 0, ndim, 0};
  for (auto d : dims) {
    for (int k = 0; k < 8; ++k) b.push_back(static_cast<std::uint8_t>(d >> (8 * k)));
  }
  return b;
}

}  // namespace

TEST_CASE("1x1 zero matrix is header plus four zero bytes") {
  const auto dir = testing::scratch_dir("rept_1x1");
  FrameMatrix m{"u", MatrixF(1, 1, 0.0f), 100.0, 0.0};
  write_tensor(m, dir / "z.rept");
  const auto bytes = slurp(dir / "z.rept");
  REQUIRE(bytes.size() == 8 + 16 + 4);
  CHECK(bytes == [] {
    auto h = header(2, {1, 1});
    h.insert(h.end(), {0, 0, 0, 0});
    return h;
  }());
}

TEST_CASE("2x3 matrix declares dims and stores 24 row-major bytes") {
  const auto dir = testing::scratch_dir("rept_2x3");
  FrameMatrix m{"u", MatrixF(2, 3, {1, 2, 3, 4, 5, 6}), 50.0, 0.01};
  write_tensor(m, dir / "m.rept");
  const auto bytes = slurp(dir / "m.rept");
  REQUIRE(bytes.size() == 24 + 24);
  const auto h = header(2, {2, 3});
  CHECK(std::equal(h.begin(), h.end(), bytes.begin()));
  float third;
  std::memcpy(&third, bytes.data() + 24 + 8, 4);
  CHECK(third == 3.0f);
}

TEST_CASE("random 50x768 round trip is bit identical with metadata") {
  const auto dir = testing::scratch_dir("rept_rt");
  std::mt19937 rng(3);
  std::normal_distribution<float> dist(0.0f, 10.0f);
  FrameMatrix m{"utt_42", MatrixF(50, 768), 49.95, 0.0125};
  for (auto& v : m.data.data()) v = dist(rng);
  write_tensor(m, dir / "r.rept");
  const auto back = read_tensor(dir / "r.rept");
  REQUIRE(back.data.rows() == 50);
  REQUIRE(back.data.cols() == 768);
  CHECK(std::memcmp(back.data.data().data(), m.data.data().data(), 50 * 768 * 4) == 0);
  CHECK(back.utterance_id == "utt_42");
  CHECK(back.frame_rate == 49.95);
  CHECK(back.t0 == 0.0125);
}

TEST_CASE("decode errors are classified") {
  SUBCASE("bad magic") {
    auto b = header(2, {1, 1});
    std::memcpy(b.data(), "XXXX", 4);
    b.insert(b.end(), 4, 0);
    CHECK(decode_error(b) == Errc::bad_magic);
  }
  SUBCASE("declared 10x10 with 50 floats is truncated") {
    auto b = header(2, {10, 10});
    b.insert(b.end(), 50 * 4, 0);
    CHECK(decode_error(b) == Errc::truncated);
  }
  SUBCASE("version") {
    auto b = header(1, {1});
    b[4] = 2;
    b.insert(b.end(), 4, 0);
    CHECK(decode_error(b) == Errc::unsupported_version);
  }
  SUBCASE("dtype") {
    auto b = header(1, {1});
    b[5] = 1;
    b.insert(b.end(), 4, 0);
    CHECK(decode_error(b) == Errc::unsupported_dtype);
  }
  SUBCASE("ndim out of range") {
    auto b = header(5, {1, 1, 1, 1, 1});
    b.insert(b.end(), 4, 0);
    CHECK(decode_error(b) == Errc::bad_header);
    auto z = header(0, {});
    CHECK(decode_error(z) == Errc::bad_header);
  }
  SUBCASE("reserved byte") {
    auto b = header(1, {1});
    b[7] = 9;
    b.insert(b.end(), 4, 0);
    CHECK(decode_error(b) == Errc::bad_header);
  }
  SUBCASE("trailing bytes") {
    auto b = header(1, {1});
    b.insert(b.end(), 5, 0);
    CHECK(decode_error(b) == Errc::trailing_data);
  }
  SUBCASE("NaN payload") {
    auto b = header(1, {1});
    const float nan = std::numeric_limits<float>::quiet_NaN();
    const auto* p = reinterpret_cast<const std::uint8_t*>(&nan);
    b.insert(b.end(), p, p + 4);
    CHECK(decode_error(b) == Errc::non_finite);
  }
  SUBCASE("huge dims do not overflow") {
    auto b = header(2, {std::numeric_limits<std::uint64_t>::max(), 2});
    CHECK(decode_error(b) == Errc::truncated);
  }
  SUBCASE("zero dim") {
    auto b = header(2, {0, 3});
    CHECK(decode_error(b) == Errc::empty_input);
  }
}

TEST_CASE("read_tensor shape and metadata rules") {
  const auto dir = testing::scratch_dir("rept_read");
  SUBCASE("missing sidecar") {
    const auto bytes = encode_tensor({{2, 2}, {1, 2, 3, 4}});
    std::ofstream(dir / "a.rept", std::ios::binary)
        .write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
    CHECK_THROWS_AS(read_tensor(dir / "a.rept"), Error);
    try {
      read_tensor(dir / "a.rept");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::missing_metadata);
    }
  }
  SUBCASE("1-D reads as a column, 3-D is rejected") {
    for (auto [name, shape] :
         {std::pair{"one", std::vector<std::uint64_t>{4}},
          std::pair{"three", std::vector<std::uint64_t>{2, 1, 2}}}) {
      const auto bytes = encode_tensor({shape, {1, 2, 3, 4}});
      const auto p = dir / (std::string(name) + ".rept");
      std::ofstream(p, std::ios::binary)
          .write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
      std::ofstream(meta_path(p)) << R"({"utterance_id":"u","frame_rate":100,"t0":0})";
    }
    const auto one = read_tensor(dir / "one.rept");
    CHECK(one.data.rows() == 4);
    CHECK(one.data.cols() == 1);
    try {
      read_tensor(dir / "three.rept");
      FAIL("3-D accepted");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::unsupported_shape);
    }
  }
  SUBCASE("writer rejects non-finite and empty input") {
    FrameMatrix m{"u", MatrixF(1, 2, {1.0f, std::numeric_limits<float>::infinity()}), 100, 0};
    CHECK_THROWS_AS(write_tensor(m, dir / "bad.rept"), Error);
    CHECK_THROWS_AS(write_tensor(FrameMatrix{}, dir / "empty.rept"), Error);
  }
}

TEST_CASE("every mutated or truncated stream parses or fails with one classified error") {
  const auto valid = encode_tensor({{3, 4}, std::vector<float>(12, 0.5f)});
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::size_t> pos(0, valid.size() - 1);
  std::uniform_int_distribution<int> byte(0, 255);
  for (int trial = 0; trial < 3000; ++trial) {
    auto b = valid;
    const int edits = 1 + trial % 3;
    for (int e = 0; e < edits; ++e) b[pos(rng)] = static_cast<std::uint8_t>(byte(rng));
    if (trial % 4 == 0) b.resize(pos(rng));
    try {
      const auto t = decode_tensor(b);
      std::size_t count = 1;
      for (auto d : t.shape) count *= d;
      CHECK(count == t.values.size());
    } catch (const Error&) {
      // classified
    }
  }
}
