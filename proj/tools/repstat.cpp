// tools/repstat.cpp

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

// repstat: layer-wise analysis of speech model representations.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "repstat/correlation.hpp"
#include "repstat/error.hpp"
#include "repstat/manifest.hpp"
#include "repstat/pipeline.hpp"
#include "repstat/svg.hpp"
#include "repstat/sweep.hpp"

namespace fs = std::filesystem;
using namespace repstat;

namespace {

constexpr int kFatal = 2;

void print_failures(const RunSummary& s) {
  for (const auto& f : s.failures) fmt::print(stderr, "repstat: warning: {}\n", f);
}

int finish(const RunSummary& s, std::string_view what) {
  print_failures(s);
  fmt::print("{}: {} ok, {} failed\n", what, s.succeeded, s.failures.size());
  return s.exit_code();
}

int report_analysis(const AnalysisOutput& out) {
  print_failures(out.summary);
  for (const auto& r : out.report.rows) {
    if (out.report.kind == SweepKind::cka && r.value < 0.0) {
      fmt::print(stderr,
                 "repstat: warning: negative CKA {} for {} layer {} (reported as is)\n",
                 format_value(r.value), r.model, r.layer);
    }
  }
  fmt::print("{} rows over {} segments\n", out.report.rows.size(), out.n_segments);
  fmt::print("wrote {}\nwrote {}\n", out.csv.string(), out.svg.string());
  return out.summary.exit_code();
}

SweepReport read_sweep_dir(const fs::path& dir, LabelKey key) {
  if (!fs::is_directory(dir)) {
    throw Error(Errc::dangling_path, fmt::format("no sweep directory {}", dir.string()));
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".csv") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  SweepReport all;
  all.kind = SweepKind::avgu;
  for (const auto& f : files) {
    SweepReport r;
    try {
      r = read_sweep_csv(f);
    } catch (const Error&) {
      continue;  // not a sweep table
    }
    if (r.kind != SweepKind::avgu) continue;
    for (const auto& row : r.rows) {
      if (row.label == to_string(key) && row.metric.rfind("avg_u/", 0) == 0) {
        all.rows.push_back(row);
      }
    }
  }
  if (all.rows.empty()) {
    throw Error(Errc::empty_input,
                fmt::format("no AvgU rows for label {} under {}", to_string(key),
                            dir.string()));
  }
  return all;
}

int run_correlate(const fs::path& sweeps_dir, const fs::path& downstream,
                  LabelKey key, std::uint64_t seed) {
  const auto all = read_sweep_dir(sweeps_dir, key);
  const auto table = read_downstream_csv(downstream);
  std::map<std::string, SweepReport> by_metric;
  for (const auto& row : all.rows) {
    auto& r = by_metric[row.metric];
    r.kind = SweepKind::avgu;
    r.rows.push_back(row);
  }
  PearsonOptions opt;
  opt.seed = seed;
  int code = 0;
  fmt::print("label,metric,n,r,p_t,p_perm,p_perm_exact\n");
  for (const auto& [metric, report] : by_metric) {
    try {
      const auto c = correlate_downstream(report, table, key, opt);
      fmt::print("{},{},{},{},{},{},{}\n", to_string(key), metric, c.result.n,
                 format_value(c.result.r), format_value(c.result.p_t),
                 format_value(c.result.p_perm), c.result.exhaustive ? 1 : 0);
      for (std::size_t i = 0; i < c.models.size(); ++i) {
        fmt::print(stderr, "  {}: max AvgU {} score {}\n", c.models[i],
                   format_value(c.max_avg_u[i]), format_value(c.scores[i]));
      }
      if (c.excluded > 0) {
        fmt::print(stderr, "repstat: warning: {} model(s) lack a downstream score\n",
                   c.excluded);
      }
    } catch (const Error& e) {
      fmt::print(stderr, "repstat: warning: {}: {}\n", metric, e.what());
      code = 1;
    }
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Layer-wise CKA and rank-sum analysis of speech representations"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Seed for stochastic steps (permutation p-values)");

  fs::path manifest_path, layers, sweeps, downstream, in_csv, out_svg;
  std::string target_name, variant_name = "literal", label_name, metric_name = "euclidean";
  bool vowels_only = false, normalized = false;

  auto* features = app.add_subcommand("features", "Compute frame-level acoustic features");
  features->add_option("--manifest", manifest_path)->required();

  auto* pool_cmd = app.add_subcommand("pool", "Pool layer activations per phone segment");
  pool_cmd->add_option("--manifest", manifest_path)->required();
  pool_cmd->add_option("--layers", layers)->required();

  auto* cka = app.add_subcommand("cka", "Layer-wise linear CKA against an acoustic target");
  cka->add_option("--manifest", manifest_path)->required();
  cka->add_option("--layers", layers)->required();
  cka->add_option("--target", target_name)
      ->required()
      ->check(CLI::IsMember({"f0_centroid", "f1_f2", "mfcc", "mel", "fbank"}));
  cka->add_option("--variant", variant_name)->check(CLI::IsMember({"literal", "centered"}));
  cka->add_flag("--vowels-only", vowels_only);

  auto* avgu = app.add_subcommand("avgu", "Layer-wise AvgU for one label");
  avgu->add_option("--manifest", manifest_path)->required();
  avgu->add_option("--layers", layers)->required();
  avgu->add_option("--label", label_name)
      ->required()
      ->check(CLI::IsMember({"phone", "speaker", "dataset", "gender"}));
  avgu->add_flag("--normalized", normalized, "Report AvgU(zscore) - AvgU(raw)");
  avgu->add_option("--metric", metric_name)->check(CLI::IsMember({"euclidean", "cosine"}));
  avgu->add_flag("--vowels-only", vowels_only);

  auto* correlate = app.add_subcommand("correlate", "Correlate max AvgU with downstream scores");
  correlate->add_option("--sweeps", sweeps)->required();
  correlate->add_option("--downstream", downstream)->required();
  correlate->add_option("--label", label_name)
      ->required()
      ->check(CLI::IsMember({"phone", "speaker"}));

  auto* report = app.add_subcommand("report", "Render a sweep CSV as SVG");
  report->add_option("--in", in_csv)->required();
  report->add_option("--svg", out_svg)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kFatal;
  }

  try {
    if (*features) return finish(run_features(read_manifest(manifest_path)), "features");
    if (*pool_cmd) return finish(run_pool(read_manifest(manifest_path), layers), "pool");
    if (*cka) {
      AnalysisOptions opt;
      opt.vowels_only = vowels_only;
      return report_analysis(run_cka(read_manifest(manifest_path), layers,
                                     *parse_cka_target(target_name),
                                     *parse_cka_variant(variant_name), opt));
    }
    if (*avgu) {
      AnalysisOptions opt;
      opt.vowels_only = vowels_only;
      opt.distance.metric = *parse_distance_metric(metric_name);
      return report_analysis(run_avgu(read_manifest(manifest_path), layers,
                                      *parse_label_key(label_name), normalized, opt));
    }
    if (*correlate) {
      return run_correlate(sweeps, downstream, *parse_label_key(label_name), seed);
    }
    if (*report) {
      const auto r = read_sweep_csv(in_csv);
      emit_svg(r, out_svg, in_csv.stem().string());
      fmt::print("wrote {}\n", out_svg.string());
      return 0;
    }
  } catch (const Error& e) {
    fmt::print(stderr, "repstat: error [{}]: {}\n", to_string(e.code()), e.what());
    return kFatal;
  } catch (const std::exception& e) {
    fmt::print(stderr, "repstat: error: {}\n", e.what());
    return kFatal;
  }
  return kFatal;
}
