// core/include/repstat/pipeline.hpp

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
#include <filesystem>
#include <string>
#include <vector>

#include "repstat/cka.hpp"
#include "repstat/features.hpp"
#include "repstat/manifest.hpp"
#include "repstat/pool.hpp"
#include "repstat/sweep.hpp"
#include "repstat/wmw.hpp"

namespace repstat {

/// Collected per-item failures of a batch step.
struct RunSummary {
  std::size_t succeeded = 0;
  std::vector<std::string> failures;

  /// 0 all good, 1 partial failure, 2 nothing succeeded.
  int exit_code() const noexcept;
};

/// Manifest utterance with its parsed alignment.
struct CorpusUtterance {
  ManifestUtterance entry;
  SegmentTable segments;
};

/// Reads every alignment named by the manifest. .phn files take their
/// sample rate from the WAV header; anything else is read as CSV.
std::vector<CorpusUtterance> load_corpus(const Manifest& manifest,
                                         RunSummary* summary = nullptr);

PoolingSpec pooling_spec_for(const Manifest& manifest, bool vowels_only);

/// Writes out_dir/features/<kind>/<utt>.rept for every requested kind.
RunSummary run_features(const Manifest& manifest);

/// Model ids under a layer directory laid out as
/// <dir>/<model>/<utt>/layer_<k>.rept, sorted.
std::vector<std::string> list_models(const std::filesystem::path& layers_dir);

/// Loads layer_0..layer_L for one utterance; stops at the first gap.
std::vector<FrameMatrix> load_layers(const std::filesystem::path& layers_dir,
                                     const std::string& model,
                                     const std::string& utterance);

/// Pools every layer of `model` over the corpus.
LayerStack pool_model(const std::vector<CorpusUtterance>& corpus,
                      const std::filesystem::path& layers_dir,
                      const std::string& model, const PoolingSpec& spec,
                      RunSummary* summary = nullptr);

/// Writes out_dir/pooled/<model>/layer_<k>.rept and segments.csv.
RunSummary run_pool(const Manifest& manifest,
                    const std::filesystem::path& layers_dir);

enum class CkaTarget { f0_centroid, f1_f2, mfcc, mel, fbank };

std::string_view to_string(CkaTarget t) noexcept;
std::optional<CkaTarget> parse_cka_target(std::string_view text) noexcept;

struct AnalysisOptions {
  bool baselines = true;  // classic mfcc/mel/fbank rows
  bool vowels_only = false;
  CkaOptions cka;
  DistanceSpec distance;
};

struct AnalysisOutput {
  SweepReport report;
  std::filesystem::path csv;
  std::filesystem::path svg;
  std::size_t n_segments = 0;
  RunSummary summary;
};

AnalysisOutput run_cka(const Manifest& manifest,
                       const std::filesystem::path& layers_dir,
                       CkaTarget target, CkaVariant variant,
                       const AnalysisOptions& options = {});

AnalysisOutput run_avgu(const Manifest& manifest,
                        const std::filesystem::path& layers_dir, LabelKey key,
                        bool normalized, const AnalysisOptions& options = {});

}  // namespace repstat
