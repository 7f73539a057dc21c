// core/src/sweep.cpp

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

#include "repstat/sweep.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "repstat/error.hpp"

namespace repstat {

namespace {

constexpr std::string_view kCkaHeader = "model,layer,metric,variant,value,n_segments";
constexpr std::string_view kAvguHeader =
    "model,layer,label,metric,value,n_points,n_skipped";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <typename T>
T parse_number(const std::string& text, std::size_t line_no) {
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw Error(Errc::malformed_line,
                fmt::format("sweep CSV line {}: bad number '{}'", line_no, text));
  }
  return value;
}

}  // namespace

void SweepReport::append(const SweepReport& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

std::string format_value(double v) { return fmt::format("{:.17g}", v); }

void write_sweep_csv(const SweepReport& report, std::ostream& out) {
  if (report.kind == SweepKind::cka) {
    out << kCkaHeader << '\n';
    for (const auto& r : report.rows) {
      out << r.model << ',' << r.layer << ',' << r.metric << ',' << r.variant
          << ',' << format_value(r.value) << ',' << r.n_points << '\n';
    }
  } else {
    out << kAvguHeader << '\n';
    for (const auto& r : report.rows) {
      out << r.model << ',' << r.layer << ',' << r.label << ',' << r.metric
          << ',' << format_value(r.value) << ',' << r.n_points << ','
          << r.n_skipped << '\n';
    }
  }
}

void write_sweep_csv(const SweepReport& report,
                     const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io, fmt::format("cannot create {}", path.string()));
  write_sweep_csv(report, out);
  if (!out) throw Error(Errc::io, fmt::format("write failed: {}", path.string()));
}

SweepReport read_sweep_csv(std::istream& in) {
  SweepReport report;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header) {
      if (line == kCkaHeader) {
        report.kind = SweepKind::cka;
      } else if (line == kAvguHeader) {
        report.kind = SweepKind::avgu;
      } else {
        throw Error(Errc::malformed_line,
                    fmt::format("unrecognized sweep CSV header '{}'", line));
      }
      header = true;
      continue;
    }
    const auto f = split_csv(line);
    const std::size_t expected = report.kind == SweepKind::cka ? 6 : 7;
    if (f.size() != expected) {
      throw Error(Errc::malformed_line,
                  fmt::format("sweep CSV line {}: expected {} fields, got {}",
                              line_no, expected, f.size()));
    }
    SweepRow r;
    r.model = f[0];
    r.layer = parse_number<int>(f[1], line_no);
    if (report.kind == SweepKind::cka) {
      r.metric = f[2];
      r.variant = f[3];
      r.value = parse_number<double>(f[4], line_no);
      r.n_points = parse_number<std::size_t>(f[5], line_no);
    } else {
      r.label = f[2];
      r.metric = f[3];
      r.value = parse_number<double>(f[4], line_no);
      r.n_points = parse_number<std::size_t>(f[5], line_no);
      r.n_skipped = parse_number<std::size_t>(f[6], line_no);
    }
    report.rows.push_back(std::move(r));
  }
  if (!header) throw Error(Errc::malformed_line, "empty sweep CSV");
  return report;
}

SweepReport read_sweep_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, fmt::format("cannot open {}", path.string()));
  try {
    return read_sweep_csv(in);
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}: {}", path.string(), e.what()));
  }
}

}  // namespace repstat
