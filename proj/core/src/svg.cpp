// core/src/svg.cpp

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

#include "repstat/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include <fmt/format.h>

#include "repstat/error.hpp"

namespace repstat {

namespace {

constexpr double kWidth = 760.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 220.0;  // legend column
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                    "#bcbd22", "#17becf"};

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Series {
  std::string name;
  std::vector<std::pair<int, double>> points;
};

std::vector<Series> collect(const SweepReport& report) {
  std::vector<Series> series;
  std::map<std::string, std::size_t> index;
  for (const auto& r : report.rows) {
    std::string name = r.model + " " + r.metric;
    if (!r.label.empty()) name += " [" + r.label + "]";
    if (!r.variant.empty()) name += " (" + r.variant + ")";
    auto [it, inserted] = index.try_emplace(name, series.size());
    if (inserted) series.push_back({name, {}});
    series[it->second].points.emplace_back(r.layer, r.value);
  }
  for (auto& s : series) {
    std::stable_sort(s.points.begin(), s.points.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  return series;
}

}  // namespace

std::string render_svg(const SweepReport& report, const std::string& title) {
  const auto series = collect(report);
  if (series.empty()) {
    throw Error(Errc::empty_input, "cannot plot an empty sweep report");
  }

  int x_lo = series[0].points[0].first, x_hi = x_lo;
  double y_lo = series[0].points[0].second, y_hi = y_lo;
  for (const auto& s : series) {
    for (const auto& [layer, value] : s.points) {
      x_lo = std::min(x_lo, layer);
      x_hi = std::max(x_hi, layer);
      y_lo = std::min(y_lo, value);
      y_hi = std::max(y_hi, value);
    }
  }
  if (x_lo == x_hi) {
    --x_lo;
    ++x_hi;
  }
  if (y_hi - y_lo < 1e-9) {
    y_lo -= 0.5;
    y_hi += 0.5;
  } else {
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;
  }

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double layer) {
    return kLeft + (layer - x_lo) / static_cast<double>(x_hi - x_lo) * plot_w;
  };
  const auto py = [&](double v) {
    return kTop + (y_hi - v) / (y_hi - y_lo) * plot_h;
  };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      "width=\"{0:.0f}\" height=\"{1:.0f}\" viewBox=\"0 0 {0:.0f} {1:.0f}\">\n",
      kWidth, kHeight);
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    out += fmt::format(
        "<text x=\"{:.2f}\" y=\"22\" font-family=\"sans-serif\" font-size=\"15\" "
        "text-anchor=\"middle\">{}</text>\n",
        kLeft + plot_w / 2.0, escape(title));
  }

  // Axes and ticks.
  out += fmt::format(
      "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">"
      "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\"/>"
      "<line x1=\"{0:.2f}\" y1=\"{3:.2f}\" x2=\"{0:.2f}\" y2=\"{1:.2f}\"/></g>\n",
      kLeft, kTop + plot_h, kLeft + plot_w, kTop);
  out += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
  const int span = x_hi - x_lo;
  const int step = span <= 20 ? 1 : (span + 19) / 20;
  for (int l = x_lo; l <= x_hi; l += step) {
    out += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n",
        px(l), kTop + plot_h + 16.0, l);
  }
  for (int k = 0; k <= 5; ++k) {
    const double v = y_lo + (y_hi - y_lo) * k / 5.0;
    out += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{:.3f}</text>\n",
        kLeft - 6.0, py(v) + 4.0, v);
    out += fmt::format(
        "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
        "stroke=\"#dddddd\"/>\n",
        kLeft, py(v), kLeft + plot_w, py(v));
  }
  out += fmt::format(
      "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" "
      "font-size=\"13\">layer</text>\n",
      kLeft + plot_w / 2.0, kHeight - 18.0);
  out += fmt::format(
      "<text x=\"18\" y=\"{0:.2f}\" text-anchor=\"middle\" font-size=\"13\" "
      "transform=\"rotate(-90 18 {0:.2f})\">{1}</text>\n",
      kTop + plot_h / 2.0, report.kind == SweepKind::cka ? "linear CKA" : "AvgU");
  out += "</g>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % std::size(kPalette)];
    std::string pts;
    for (const auto& [layer, value] : series[s].points) {
      if (!pts.empty()) pts += ' ';
      pts += fmt::format("{:.2f},{:.2f}", px(layer), py(value));
    }
    out += fmt::format(
        "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>\n",
        color, pts);
    for (const auto& [layer, value] : series[s].points) {
      out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2.5\" fill=\"{}\"/>\n",
                         px(layer), py(value), color);
    }
    const double ly = kTop + 14.0 * static_cast<double>(s);
    out += fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" "
        "stroke=\"{3}\" stroke-width=\"2\"/>\n",
        kWidth - kRight + 12.0, ly, kWidth - kRight + 30.0, color);
    out += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" "
        "font-size=\"10\">{}</text>\n",
        kWidth - kRight + 34.0, ly + 3.5, escape(series[s].name));
  }
  out += "</svg>\n";
  return out;
}

void emit_svg(const SweepReport& report, const std::filesystem::path& path,
              const std::string& title) {
  const auto doc = render_svg(report, title);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io, fmt::format("cannot create {}", path.string()));
  out << doc;
  if (!out) throw Error(Errc::io, fmt::format("write failed: {}", path.string()));
}

}  // namespace repstat
