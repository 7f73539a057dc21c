// core/include/repstat/manifest.hpp

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

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "repstat/features.hpp"

namespace repstat {

struct ManifestUtterance {
  std::string id;  // wav stem unless given
  std::filesystem::path wav;
  std::filesystem::path alignment;
  std::string speaker;
  std::string gender;
};

/// Parsed run manifest. Relative paths are resolved against the
/// manifest's directory.
///
/// {
///   "dataset": "timit",
///   "utterances": [{"wav": "a.wav", "alignment": "a.phn",
///                   "speaker": "fcjf0", "gender": "f"}],
///   "labels": ["phone", "speaker"],
///   "features": ["mfcc", "mel", "fbank", "f0", "formants", "centroid"],
///   "out_dir": "out",
///   "pooling": {"exclude": ["h#"], "min_frames": 1}      (optional)
/// }
///
/// "features" may also be an object {"kinds": [...], "window_len": ...}
/// overriding FeatureConfig fields.
struct Manifest {
  std::string dataset;
  std::vector<ManifestUtterance> utterances;
  std::vector<std::string> labels;
  std::vector<std::string> feature_kinds;
  FeatureConfig feature_config;
  std::filesystem::path out_dir;
  std::set<std::string> exclude;
  bool exclude_given = false;  // else the default silence markers apply
  std::size_t min_frames = 1;
  std::filesystem::path source;
};

Manifest read_manifest(const std::filesystem::path& path);

}  // namespace repstat
