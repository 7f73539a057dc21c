// core/src/pipeline.cpp

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

#include "repstat/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>

#include <fmt/format.h>

#include "repstat/error.hpp"
#include "repstat/parallel.hpp"
#include "repstat/rept.hpp"
#include "repstat/segments.hpp"
#include "repstat/svg.hpp"

namespace fs = std::filesystem;

namespace repstat {

int RunSummary::exit_code() const noexcept {
  if (failures.empty()) return 0;
  return succeeded == 0 ? 2 : 1;
}

namespace {

void record(RunSummary* summary, std::string message) {
  if (summary == nullptr) throw Error(Errc::io, message);
  summary->failures.push_back(std::move(message));
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw Error(Errc::io, fmt::format("cannot create {}: {}", dir.string(),
                                      ec.message()));
  }
}

std::vector<FeatureKind> requested_kinds(const Manifest& m) {
  std::vector<FeatureKind> kinds;
  for (const auto& name : m.feature_kinds) kinds.push_back(*parse_feature_kind(name));
  if (kinds.empty()) {
    kinds = {FeatureKind::mfcc, FeatureKind::mel,     FeatureKind::fbank,
             FeatureKind::f0,   FeatureKind::formants, FeatureKind::centroid};
  }
  return kinds;
}

SegmentTable filtered(const SegmentTable& segments, const PoolingSpec& spec) {
  SegmentTable out;
  for (const auto& s : segments) {
    if (passes_filter(s, spec)) out.push_back(s);
  }
  return out;
}

/// Pools one classic feature over the corpus, computed from the WAVs.
PooledMatrix pooled_feature(const std::vector<CorpusUtterance>& corpus,
                            FeatureKind kind, const FeatureConfig& cfg,
                            const PoolingSpec& spec, RunSummary& summary) {
  std::vector<PooledMatrix> parts;
  for (const auto& u : corpus) {
    try {
      auto frames = compute_feature(kind, read_wav(u.entry.wav), cfg);
      frames.utterance_id = u.entry.id;
      parts.push_back(pool(frames, u.segments, spec).matrix);
    } catch (const Error& e) {
      if (e.code() == Errc::no_segments) continue;
      summary.failures.push_back(
          fmt::format("{} [{}]: {}", u.entry.id, to_string(kind), e.what()));
    }
  }
  return concat_rows(parts);
}

PooledMatrix pooled_target(const std::vector<CorpusUtterance>& corpus,
                           AcousticTarget which, const FeatureConfig& cfg,
                           const PoolingSpec& spec, RunSummary& summary) {
  std::vector<PooledMatrix> parts;
  for (const auto& u : corpus) {
    try {
      const auto segs = filtered(u.segments, spec);
      if (segs.empty()) continue;
      auto res = acoustic_target(read_wav(u.entry.wav), cfg, segs, which);
      if (res.matrix.rows() > 0) parts.push_back(std::move(res.matrix));
    } catch (const Error& e) {
      summary.failures.push_back(
          fmt::format("{} [{}]: {}", u.entry.id, to_string(which), e.what()));
    }
  }
  return concat_rows(parts);
}

struct Prepared {
  std::vector<CorpusUtterance> corpus;
  PoolingSpec spec;
  std::vector<LayerStack> stacks;
  std::vector<std::pair<std::string, PooledMatrix>> baselines;
  RunSummary summary;
};

Prepared prepare(const Manifest& manifest, const fs::path& layers_dir,
                 const AnalysisOptions& options,
                 std::optional<FeatureKind> skip_baseline) {
  Prepared p;
  p.corpus = load_corpus(manifest, &p.summary);
  p.summary.succeeded = p.corpus.size();
  p.spec = pooling_spec_for(manifest, options.vowels_only);
  if (!layers_dir.empty()) {
    for (const auto& model : list_models(layers_dir)) {
      try {
        p.stacks.push_back(pool_model(p.corpus, layers_dir, model, p.spec, &p.summary));
      } catch (const Error& e) {
        p.summary.failures.push_back(fmt::format("model {}: {}", model, e.what()));
      }
    }
  }
  if (options.baselines) {
    for (auto kind : {FeatureKind::mfcc, FeatureKind::mel, FeatureKind::fbank}) {
      if (skip_baseline == kind) continue;
      auto m = pooled_feature(p.corpus, kind, manifest.feature_config, p.spec,
                              p.summary);
      if (m.rows() > 0) p.baselines.emplace_back(std::string(to_string(kind)), std::move(m));
    }
  }
  return p;
}

/// Restricts every matrix to the segments all of them share.
std::size_t intersect(Prepared& p, PooledMatrix* target) {
  std::vector<const PooledMatrix*> all;
  if (target != nullptr) all.push_back(target);
  for (const auto& s : p.stacks) all.push_back(&s.layers.front());
  for (const auto& b : p.baselines) all.push_back(&b.second);
  if (all.empty()) {
    throw Error(Errc::no_segments, "nothing to analyze: no layers and no baselines");
  }
  const auto keys = common_keys(all);
  if (keys.size() < 3) {
    throw Error(Errc::no_segments,
                fmt::format("only {} segments shared by all representations",
                            keys.size()));
  }
  if (target != nullptr) *target = select_rows(*target, keys);
  for (auto& s : p.stacks) {
    for (auto& layer : s.layers) layer = select_rows(layer, keys);
  }
  for (auto& b : p.baselines) b.second = select_rows(b.second, keys);
  return keys.size();
}

void write_outputs(AnalysisOutput& out, const fs::path& dir,
                   const std::string& stem, const std::string& title) {
  ensure_dir(dir);
  out.csv = dir / (stem + ".csv");
  out.svg = dir / (stem + ".svg");
  write_sweep_csv(out.report, out.csv);
  emit_svg(out.report, out.svg, title);
}

}  // namespace

std::vector<CorpusUtterance> load_corpus(const Manifest& manifest,
                                         RunSummary* summary) {
  std::vector<CorpusUtterance> corpus;
  for (const auto& u : manifest.utterances) {
    try {
      CorpusUtterance cu{u, {}};
      if (u.alignment.extension() == ".phn") {
        PhnSource src;
        src.sample_rate = read_wav(u.wav).sample_rate;
        src.utterance_id = u.id;
        src.speaker = u.speaker;
        src.dataset = manifest.dataset;
        src.gender = u.gender;
        cu.segments = read_segments(u.alignment, SegmentFormat::timit_phn, src);
      } else {
        for (auto& row : read_segments(u.alignment, SegmentFormat::csv)) {
          if (row.utterance_id != u.id) continue;
          if (row.speaker.empty()) row.speaker = u.speaker;
          if (row.gender.empty()) row.gender = u.gender;
          if (row.dataset.empty()) row.dataset = manifest.dataset;
          cu.segments.push_back(std::move(row));
        }
      }
      corpus.push_back(std::move(cu));
    } catch (const Error& e) {
      record(summary, fmt::format("{}: {}", u.id, e.what()));
    }
  }
  return corpus;
}

PoolingSpec pooling_spec_for(const Manifest& manifest, bool vowels_only) {
  PoolingSpec spec;
  spec.exclude = manifest.exclude_given ? manifest.exclude : default_exclusions();
  spec.min_frames = manifest.min_frames;
  if (vowels_only) spec.phone_filter = vowel_set();
  return spec;
}

RunSummary run_features(const Manifest& manifest) {
  const auto kinds = requested_kinds(manifest);
  for (auto k : kinds) ensure_dir(manifest.out_dir / "features" / std::string(to_string(k)));

  const auto& utts = manifest.utterances;
  std::vector<std::string> errors(utts.size());
  parallel_for(utts.size(), 0, [&](std::size_t i) {
    const auto& u = utts[i];
    try {
      const auto wave = read_wav(u.wav);
      for (auto k : kinds) {
        auto m = compute_feature(k, wave, manifest.feature_config);
        m.utterance_id = u.id;
        write_tensor(m, manifest.out_dir / "features" / std::string(to_string(k)) /
                            (u.id + ".rept"));
      }
    } catch (const Error& e) {
      errors[i] = fmt::format("{}: {}", u.id, e.what());
    }
  });

  RunSummary summary;
  for (auto& e : errors) {
    if (e.empty()) {
      ++summary.succeeded;
    } else {
      summary.failures.push_back(std::move(e));
    }
  }
  return summary;
}

std::vector<std::string> list_models(const fs::path& layers_dir) {
  if (!fs::is_directory(layers_dir)) {
    throw Error(Errc::dangling_path,
                fmt::format("layer directory {} not found", layers_dir.string()));
  }
  std::vector<std::string> models;
  for (const auto& entry : fs::directory_iterator(layers_dir)) {
    if (entry.is_directory()) models.push_back(entry.path().filename().string());
  }
  std::sort(models.begin(), models.end());
  return models;
}

std::vector<FrameMatrix> load_layers(const fs::path& layers_dir,
                                     const std::string& model,
                                     const std::string& utterance) {
  std::vector<FrameMatrix> layers;
  const auto dir = layers_dir / model / utterance;
  for (std::size_t k = 0;; ++k) {
    const auto path = dir / fmt::format("layer_{}.rept", k);
    if (!fs::exists(path)) break;
    auto m = read_tensor(path);
    // The directory layout names the utterance.
    m.utterance_id = utterance;
    layers.push_back(std::move(m));
  }
  return layers;
}

LayerStack pool_model(const std::vector<CorpusUtterance>& corpus,
                      const fs::path& layers_dir, const std::string& model,
                      const PoolingSpec& spec, RunSummary* summary) {
  std::vector<std::vector<PooledMatrix>> per_layer;
  for (const auto& u : corpus) {
    try {
      const auto layers = load_layers(layers_dir, model, u.entry.id);
      if (layers.empty()) {
        throw Error(Errc::dangling_path, "no layer_0.rept");
      }
      if (!per_layer.empty() && layers.size() != per_layer.size()) {
        throw Error(Errc::label_mismatch,
                    fmt::format("{} layers, expected {}", layers.size(),
                                per_layer.size()));
      }
      std::vector<PooledMatrix> pooled;
      try {
        for (const auto& frames : layers) pooled.push_back(pool(frames, u.segments, spec).matrix);
      } catch (const Error& e) {
        if (e.code() == Errc::no_segments) continue;
        throw;
      }
      std::vector<const PooledMatrix*> views;
      for (const auto& p : pooled) views.push_back(&p);
      const auto keys = common_keys(views);
      if (per_layer.empty()) per_layer.resize(layers.size());
      for (std::size_t k = 0; k < pooled.size(); ++k) {
        per_layer[k].push_back(select_rows(pooled[k], keys));
      }
    } catch (const Error& e) {
      record(summary, fmt::format("{}/{}: {}", model, u.entry.id, e.what()));
    }
  }
  if (per_layer.empty()) {
    throw Error(Errc::no_segments,
                fmt::format("model {}: no pooled segments", model));
  }
  std::vector<PooledMatrix> layers;
  for (const auto& parts : per_layer) layers.push_back(concat_rows(parts));
  return stack_layers(model, std::move(layers));
}

RunSummary run_pool(const Manifest& manifest, const fs::path& layers_dir) {
  RunSummary summary;
  const auto corpus = load_corpus(manifest, &summary);
  const auto spec = pooling_spec_for(manifest, false);
  for (const auto& model : list_models(layers_dir)) {
    try {
      const auto stack = pool_model(corpus, layers_dir, model, spec, &summary);
      const auto dir = manifest.out_dir / "pooled" / model;
      ensure_dir(dir);
      for (std::size_t k = 0; k < stack.layers.size(); ++k) {
        const auto& layer = stack.layers[k];
        FrameMatrix m;
        m.utterance_id = model;
        m.frame_rate = 1.0;
        std::vector<float> values(layer.data.size());
        std::transform(layer.data.data().begin(), layer.data.data().end(),
                       values.begin(), [](double v) { return static_cast<float>(v); });
        m.data = MatrixF(layer.rows(), layer.dim(), std::move(values));
        write_tensor(m, dir / fmt::format("layer_{}.rept", k));
      }
      std::ofstream seg(dir / "segments.csv", std::ios::binary | std::ios::trunc);
      write_segments_csv(stack.layers.front().labels, seg);
      ++summary.succeeded;
    } catch (const Error& e) {
      summary.failures.push_back(fmt::format("model {}: {}", model, e.what()));
    }
  }
  return summary;
}

std::string_view to_string(CkaTarget t) noexcept {
  switch (t) {
    case CkaTarget::f0_centroid: return "f0_centroid";
    case CkaTarget::f1_f2: return "f1_f2";
    case CkaTarget::mfcc: return "mfcc";
    case CkaTarget::mel: return "mel";
    case CkaTarget::fbank: return "fbank";
  }
  return "f0_centroid";
}

std::optional<CkaTarget> parse_cka_target(std::string_view text) noexcept {
  for (auto t : {CkaTarget::f0_centroid, CkaTarget::f1_f2, CkaTarget::mfcc,
                 CkaTarget::mel, CkaTarget::fbank}) {
    if (to_string(t) == text) return t;
  }
  return std::nullopt;
}

AnalysisOutput run_cka(const Manifest& manifest, const fs::path& layers_dir,
                       CkaTarget target, CkaVariant variant,
                       const AnalysisOptions& options) {
  std::optional<FeatureKind> target_kind;
  if (target == CkaTarget::mfcc) target_kind = FeatureKind::mfcc;
  if (target == CkaTarget::mel) target_kind = FeatureKind::mel;
  if (target == CkaTarget::fbank) target_kind = FeatureKind::fbank;

  auto p = prepare(manifest, layers_dir, options, target_kind);
  PooledMatrix target_matrix =
      target_kind ? pooled_feature(p.corpus, *target_kind, manifest.feature_config,
                                   p.spec, p.summary)
                  : pooled_target(p.corpus,
                                  target == CkaTarget::f0_centroid
                                      ? AcousticTarget::f0_centroid
                                      : AcousticTarget::f1_f2,
                                  manifest.feature_config, p.spec, p.summary);
  if (target_matrix.rows() == 0) {
    throw Error(Errc::no_segments, "acoustic target produced no segments");
  }

  AnalysisOutput out;
  out.n_segments = intersect(p, &target_matrix);
  const auto name = std::string(to_string(target));
  for (const auto& stack : p.stacks) {
    out.report.append(cka_sweep(stack, target_matrix, name, variant, {}, options.cka));
  }
  for (const auto& [bname, matrix] : p.baselines) {
    out.report.append(cka_sweep(LayerStack{bname, {matrix}}, target_matrix, name,
                                variant, {}, options.cka));
  }
  out.report.kind = SweepKind::cka;

  const auto stem = fmt::format("cka_{}_{}{}", name, to_string(variant),
                                options.vowels_only ? "_vowels" : "");
  write_outputs(out, manifest.out_dir, stem,
                fmt::format("{} linear CKA vs {} ({} segments{})", manifest.dataset,
                            name, out.n_segments,
                            options.vowels_only ? ", vowels" : ""));
  out.summary = std::move(p.summary);
  return out;
}

AnalysisOutput run_avgu(const Manifest& manifest, const fs::path& layers_dir,
                        LabelKey key, bool normalized,
                        const AnalysisOptions& options) {
  auto p = prepare(manifest, layers_dir, options, std::nullopt);

  AnalysisOutput out;
  out.n_segments = intersect(p, nullptr);
  out.report.kind = SweepKind::avgu;
  const auto sweep = [&](const LayerStack& stack) {
    return normalized ? normalization_delta(stack, key, options.distance)
                      : u_sweep(stack, key, options.distance);
  };
  for (const auto& stack : p.stacks) out.report.append(sweep(stack));
  for (const auto& [bname, matrix] : p.baselines) {
    out.report.append(sweep(LayerStack{bname, {matrix}}));
  }

  const auto stem = fmt::format("avgu_{}_{}{}{}", to_string(key),
                                to_string(options.distance.metric),
                                normalized ? "_normdelta" : "",
                                options.vowels_only ? "_vowels" : "");
  write_outputs(out, manifest.out_dir, stem,
                fmt::format("{} {} by {} ({} segments)", manifest.dataset,
                            normalized ? "AvgU change after z-scoring" : "AvgU",
                            to_string(key), out.n_segments));
  out.summary = std::move(p.summary);
  return out;
}

}  // namespace repstat
