// core/src/manifest.cpp

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

#include "repstat/manifest.hpp"

#include <fstream>

#include <fmt/format.h>
#include <json.hpp>

#include "repstat/error.hpp"

namespace repstat {

namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key, std::string_view where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(Errc::missing_key,
                fmt::format("manifest {}: missing key \"{}\"", where, key));
  }
  return obj.at(key);
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

void apply_feature_overrides(const json& obj, FeatureConfig& cfg) {
  const auto num = [&](const char* key, auto& field) {
    if (obj.contains(key)) field = obj.at(key).get<std::decay_t<decltype(field)>>();
  };
  num("window_len", cfg.window_len);
  num("hop", cfg.hop);
  num("fft_size", cfg.fft_size);
  num("n_mels", cfg.n_mels);
  num("n_mfcc", cfg.n_mfcc);
  num("fbank_bins", cfg.fbank_bins);
  num("preemphasis", cfg.preemphasis);
  num("f0_min", cfg.f0_min);
  num("f0_max", cfg.f0_max);
  num("f0_window_len", cfg.f0_window_len);
  num("voicing_threshold", cfg.voicing_threshold);
  num("lpc_order", cfg.lpc_order);
  num("formant_max_bandwidth", cfg.formant_max_bandwidth);
}

}  // namespace

Manifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, fmt::format("cannot open {}", path.string()));

  json root;
  try {
    root = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::malformed_line,
                fmt::format("{}: invalid JSON: {}", path.string(), e.what()));
  }

  Manifest m;
  m.source = path;
  const auto base = path.parent_path();
  try {
    m.dataset = require(root, "dataset", "root").get<std::string>();
    const auto& utts = require(root, "utterances", "root");
    const auto& labels = require(root, "labels", "root");
    const auto& features = require(root, "features", "root");
    m.out_dir = resolve(base, require(root, "out_dir", "root").get<std::string>());

    for (const auto& l : labels) {
      const auto name = l.get<std::string>();
      if (!parse_label_key(name)) {
        throw Error(Errc::invalid_argument,
                    fmt::format("manifest: unknown label \"{}\"", name));
      }
      m.labels.push_back(name);
    }

    const json* kinds = &features;
    if (features.is_object()) {
      kinds = &require(features, "kinds", "features");
      apply_feature_overrides(features, m.feature_config);
    }
    for (const auto& k : *kinds) {
      const auto name = k.get<std::string>();
      if (!parse_feature_kind(name)) {
        throw Error(Errc::invalid_argument,
                    fmt::format("manifest: unknown feature \"{}\"", name));
      }
      m.feature_kinds.push_back(name);
    }
    m.feature_config.validate();

    if (root.contains("pooling")) {
      const auto& pooling = root.at("pooling");
      if (pooling.contains("exclude")) {
        m.exclude_given = true;
        for (const auto& s : pooling.at("exclude")) {
          m.exclude.insert(s.get<std::string>());
        }
      }
      m.min_frames = pooling.value("min_frames", std::size_t{1});
    }

    for (std::size_t i = 0; i < utts.size(); ++i) {
      const auto where = fmt::format("utterances[{}]", i);
      const auto& u = utts.at(i);
      ManifestUtterance e;
      e.wav = resolve(base, require(u, "wav", where).get<std::string>());
      e.alignment = resolve(base, require(u, "alignment", where).get<std::string>());
      e.speaker = require(u, "speaker", where).get<std::string>();
      e.gender = require(u, "gender", where).get<std::string>();
      e.id = u.value("id", e.wav.stem().string());
      m.utterances.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw Error(Errc::malformed_line,
                fmt::format("{}: wrong value type: {}", path.string(), e.what()));
  }

  for (const auto& u : m.utterances) {
    for (const auto* p : {&u.wav, &u.alignment}) {
      if (!std::filesystem::exists(*p)) {
        throw Error(Errc::dangling_path,
                    fmt::format("manifest references missing file {}",
                                p->string()));
      }
    }
  }
  return m;
}

}  // namespace repstat
