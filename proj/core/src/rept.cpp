// core/src/rept.cpp

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

#include "repstat/rept.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include <fmt/format.h>
#include <json.hpp>

#include "repstat/error.hpp"

namespace repstat {

static_assert(std::endian::native == std::endian::little,
              "REPT I/O assumes a little-endian host");
static_assert(std::numeric_limits<float>::is_iec559);

namespace {

constexpr std::uint8_t kMagic[4] = {0x52, 0x45, 0x50, 0x54};
constexpr std::size_t kFixedHeader = 8;

template <typename T>
void put(std::vector<std::uint8_t>& out, T value) {
  const auto* p = reinterpret_cast<const std::uint8_t*>(&value);
  out.insert(out.end(), p, p + sizeof(T));
}

template <typename T>
T get(std::span<const std::uint8_t> bytes, std::size_t offset) {
  T value;
  std::memcpy(&value, bytes.data() + offset, sizeof(T));
  return value;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, fmt::format("cannot open {}", path.string()));
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw Error(Errc::io, fmt::format("read failed: {}", path.string()));
  }
  return bytes;
}

}  // namespace

std::vector<std::uint8_t> encode_tensor(const Tensor& t) {
  if (t.shape.empty() || t.shape.size() > 4) {
    throw Error(Errc::unsupported_shape,
                fmt::format("REPT supports 1..4 dims, got {}", t.shape.size()));
  }
  std::uint64_t count = 1;
  for (auto d : t.shape) count *= d;
  if (count == 0) throw Error(Errc::empty_input, "REPT tensor has no values");
  if (count != t.values.size()) {
    throw Error(Errc::dimension_mismatch,
                fmt::format("shape holds {} values, buffer has {}", count,
                            t.values.size()));
  }
  require_finite(t.values, "REPT payload");

  std::vector<std::uint8_t> out;
  out.reserve(kFixedHeader + 8 * t.shape.size() + 4 * t.values.size());
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  out.push_back(kReptVersion);
  out.push_back(kReptDtypeF32);
  out.push_back(static_cast<std::uint8_t>(t.shape.size()));
  out.push_back(0);
  for (auto d : t.shape) put<std::uint64_t>(out, d);
  const auto* payload = reinterpret_cast<const std::uint8_t*>(t.values.data());
  out.insert(out.end(), payload, payload + 4 * t.values.size());
  return out;
}

Tensor decode_tensor(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw Error(Errc::bad_magic, "not a REPT stream (bad magic)");
  }
  if (bytes.size() < kFixedHeader) {
    throw Error(Errc::truncated, "REPT header truncated");
  }
  if (bytes[4] != kReptVersion) {
    throw Error(Errc::unsupported_version,
                fmt::format("unsupported REPT version {}", bytes[4]));
  }
  if (bytes[5] != kReptDtypeF32) {
    throw Error(Errc::unsupported_dtype,
                fmt::format("unsupported REPT dtype {}", bytes[5]));
  }
  const std::size_t ndim = bytes[6];
  if (ndim < 1 || ndim > 4 || bytes[7] != 0) {
    throw Error(Errc::bad_header,
                fmt::format("bad REPT header (ndim {}, reserved {})", ndim,
                            bytes[7]));
  }
  const std::size_t header = kFixedHeader + 8 * ndim;
  if (bytes.size() < header) {
    throw Error(Errc::truncated, "REPT dimension table truncated");
  }

  Tensor t;
  t.shape.resize(ndim);
  std::uint64_t count = 1;
  const std::uint64_t max_count = (bytes.size() - header) / 4;
  for (std::size_t k = 0; k < ndim; ++k) {
    t.shape[k] = get<std::uint64_t>(bytes, kFixedHeader + 8 * k);
    if (t.shape[k] == 0) {
      throw Error(Errc::empty_input, "REPT tensor has a zero dimension");
    }
    // Any product beyond the bytes available is a truncation; checking
    // before multiplying keeps the product from overflowing.
    if (t.shape[k] > max_count || count > max_count / t.shape[k]) {
      throw Error(Errc::truncated, "REPT payload shorter than declared dims");
    }
    count *= t.shape[k];
  }
  const std::size_t expected = header + 4 * count;
  if (bytes.size() < expected) {
    throw Error(Errc::truncated,
                fmt::format("REPT payload truncated: need {} bytes, have {}",
                            expected, bytes.size()));
  }
  if (bytes.size() > expected) {
    throw Error(Errc::trailing_data,
                fmt::format("{} trailing bytes after REPT payload",
                            bytes.size() - expected));
  }
  t.values.resize(count);
  std::memcpy(t.values.data(), bytes.data() + header, 4 * count);
  require_finite(t.values, "REPT payload");
  return t;
}

std::filesystem::path meta_path(const std::filesystem::path& tensor_path) {
  auto p = tensor_path;
  p += ".meta.json";
  return p;
}

void write_tensor(const FrameMatrix& m, const std::filesystem::path& path) {
  if (m.data.empty()) throw Error(Errc::empty_input, "cannot write empty matrix");
  if (!(m.frame_rate > 0.0) || !std::isfinite(m.frame_rate) ||
      !std::isfinite(m.t0)) {
    throw Error(Errc::invalid_argument, "frame_rate must be positive");
  }
  Tensor t{{m.data.rows(), m.data.cols()}, m.data.storage()};
  const auto bytes = encode_tensor(t);

  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io, fmt::format("cannot create {}", path.string()));
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(Errc::io, fmt::format("write failed: {}", path.string()));
  }

  nlohmann::ordered_json meta;
  meta["utterance_id"] = m.utterance_id;
  meta["frame_rate"] = m.frame_rate;
  meta["t0"] = m.t0;
  std::ofstream out(meta_path(path), std::ios::trunc);
  if (!out) {
    throw Error(Errc::io,
                fmt::format("cannot create {}", meta_path(path).string()));
  }
  out << meta.dump(2) << '\n';
  if (!out) throw Error(Errc::io, "metadata write failed");
}

FrameMatrix read_tensor(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  Tensor t = decode_tensor(bytes);
  if (t.shape.size() > 2) {
    throw Error(Errc::unsupported_shape,
                fmt::format("{}: {}-D tensor is not a frame matrix",
                            path.string(), t.shape.size()));
  }
  const std::size_t rows = t.shape[0];
  const std::size_t cols = t.shape.size() == 2 ? t.shape[1] : 1;

  FrameMatrix m;
  m.data = MatrixF(rows, cols, std::move(t.values));

  const auto mp = meta_path(path);
  std::ifstream in(mp);
  if (!in) {
    throw Error(Errc::missing_metadata,
                fmt::format("missing sidecar {}", mp.string()));
  }
  try {
    const auto meta = nlohmann::json::parse(in);
    m.utterance_id = meta.at("utterance_id").get<std::string>();
    m.frame_rate = meta.at("frame_rate").get<double>();
    m.t0 = meta.value("t0", 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::missing_metadata,
                fmt::format("bad sidecar {}: {}", mp.string(), e.what()));
  }
  if (!(m.frame_rate > 0.0)) {
    throw Error(Errc::missing_metadata,
                fmt::format("{}: frame_rate must be positive", mp.string()));
  }
  return m;
}

}  // namespace repstat
