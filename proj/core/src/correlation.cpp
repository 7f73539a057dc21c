// core/src/correlation.cpp

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

#include "repstat/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include "repstat/error.hpp"

namespace repstat {

namespace {

struct Centered {
  std::vector<double> dx, dy;
  double sxx = 0.0, syy = 0.0;
};

Centered center(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(Errc::dimension_mismatch,
                fmt::format("correlation inputs differ in length: {} vs {}",
                            x.size(), y.size()));
  }
  if (x.size() < 3) {
    throw Error(Errc::too_few_rows,
                fmt::format("correlation needs n >= 3, got {}", x.size()));
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  Centered c;
  c.dx.reserve(x.size());
  c.dy.reserve(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    c.dx.push_back(x[i] - mx);
    c.dy.push_back(y[i] - my);
    c.sxx += c.dx.back() * c.dx.back();
    c.syy += c.dy.back() * c.dy.back();
  }
  if (!(c.sxx > 0.0) || !(c.syy > 0.0)) {
    throw Error(Errc::degenerate, "correlation input is constant");
  }
  return c;
}

double corr_under(const Centered& c, std::span<const std::size_t> perm) {
  double sxy = 0.0;
  for (std::size_t i = 0; i < perm.size(); ++i) sxy += c.dx[i] * c.dy[perm[i]];
  return std::clamp(sxy / std::sqrt(c.sxx * c.syy), -1.0, 1.0);
}

}  // namespace

double pearson_r(std::span<const double> x, std::span<const double> y) {
  const auto c = center(x, y);
  std::vector<std::size_t> identity(x.size());
  std::iota(identity.begin(), identity.end(), 0);
  return corr_under(c, identity);
}

double pearson_p_t(double r, std::size_t n) {
  if (n < 3) throw Error(Errc::too_few_rows, "t test needs n >= 3");
  if (std::abs(r) >= 1.0) return 0.0;
  const double df = static_cast<double>(n - 2);
  const double t = std::abs(r) * std::sqrt(df / (1.0 - r * r));
  const boost::math::students_t_distribution<double> dist(df);
  return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, t)));
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y,
                          const PearsonOptions& options) {
  const auto c = center(x, y);
  const std::size_t n = x.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);

  CorrelationResult res;
  res.n = n;
  res.r = corr_under(c, perm);
  res.p_t = pearson_p_t(res.r, n);

  const double bar = std::abs(res.r) - 1e-12;
  std::size_t hits = 0, total = 0;
  if (n <= options.max_exhaustive_n) {
    res.exhaustive = true;
    do {
      ++total;
      if (std::abs(corr_under(c, perm)) >= bar) ++hits;
    } while (std::next_permutation(perm.begin(), perm.end()));
    res.p_perm = static_cast<double>(hits) / static_cast<double>(total);
  } else {
    std::mt19937_64 rng(options.seed);
    for (std::size_t b = 0; b < options.sampled_permutations; ++b) {
      std::shuffle(perm.begin(), perm.end(), rng);
      if (std::abs(corr_under(c, perm)) >= bar) ++hits;
    }
    res.p_perm = static_cast<double>(hits + 1) /
                 static_cast<double>(options.sampled_permutations + 1);
  }
  return res;
}

DownstreamTable read_downstream_csv(std::istream& in) {
  DownstreamTable table;
  std::set<std::pair<std::string, std::string>> seen;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header) {
      if (line != "model,task,score") {
        throw Error(Errc::malformed_line,
                    "downstream CSV must start with header model,task,score");
      }
      header = true;
      continue;
    }
    std::stringstream ss(line);
    DownstreamRow row;
    std::string score;
    if (!std::getline(ss, row.model, ',') || !std::getline(ss, row.task, ',') ||
        !std::getline(ss, score) || score.find(',') != std::string::npos) {
      throw Error(Errc::malformed_line,
                  fmt::format("downstream CSV line {}: expected 3 fields", line_no));
    }
    try {
      std::size_t used = 0;
      row.score = std::stod(score, &used);
      if (used != score.size() || !std::isfinite(row.score)) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw Error(Errc::malformed_line,
                  fmt::format("downstream CSV line {}: bad score '{}'", line_no, score));
    }
    if (!seen.emplace(row.model, row.task).second) {
      throw Error(Errc::malformed_line,
                  fmt::format("downstream CSV line {}: duplicate ({}, {})", line_no,
                              row.model, row.task));
    }
    table.push_back(std::move(row));
  }
  if (!header) throw Error(Errc::malformed_line, "empty downstream CSV");
  return table;
}

DownstreamTable read_downstream_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, fmt::format("cannot open {}", path.string()));
  return read_downstream_csv(in);
}

std::string task_for_label(LabelKey key) {
  switch (key) {
    case LabelKey::phone: return "phone_recognition";
    case LabelKey::speaker: return "speaker_id";
    default: break;
  }
  throw Error(Errc::invalid_argument,
              fmt::format("no downstream task for label {}", to_string(key)));
}

DownstreamCorrelation correlate_downstream(const SweepReport& sweeps,
                                           const DownstreamTable& table,
                                           LabelKey key,
                                           const PearsonOptions& options) {
  const auto task = task_for_label(key);
  const auto label = std::string(to_string(key));

  std::map<std::string, double> best;
  for (const auto& r : sweeps.rows) {
    if (r.label != label || !r.metric.starts_with("avg_u/")) continue;
    auto [it, inserted] = best.try_emplace(r.model, r.value);
    if (!inserted) it->second = std::max(it->second, r.value);
  }
  std::map<std::string, double> scores;
  for (const auto& row : table) {
    if (row.task == task) scores[row.model] = row.score;
  }

  DownstreamCorrelation out;
  for (const auto& [model, value] : best) {
    const auto it = scores.find(model);
    if (it == scores.end()) {
      ++out.excluded;
      continue;
    }
    out.models.push_back(model);
    out.max_avg_u.push_back(value);
    out.scores.push_back(it->second);
  }
  if (out.models.size() < 3) {
    throw Error(Errc::too_few_rows,
                fmt::format("need >= 3 models with both sweeps and {} scores, "
                            "found {}",
                            task, out.models.size()));
  }
  out.result = pearson(out.max_avg_u, out.scores, options);
  return out;
}

}  // namespace repstat
