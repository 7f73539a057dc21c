// core/src/segments.cpp

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

#include "repstat/segments.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "repstat/error.hpp"
#include "repstat/sweep.hpp"

namespace repstat {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = line.find(sep, pos);
    out.push_back(trim(line.substr(pos, next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

bool parse_double(std::string_view text, double& out) {
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

bool parse_integer(std::string_view text, long long& out) {
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

void check_interval(const SegmentRow& row, std::size_t line_no) {
  if (row.start < 0.0 || row.end < 0.0) {
    throw Error(Errc::invalid_interval,
                fmt::format("line {}: negative time", line_no));
  }
  if (!(row.start < row.end)) {
    throw Error(Errc::invalid_interval,
                fmt::format("line {}: start {} >= end {}", line_no, row.start,
                            row.end));
  }
}

const std::set<std::string, std::less<>>& arpabet_inventory() {
  static const std::set<std::string, std::less<>> inventory = {
      // stops, affricates, fricatives
      "b", "d", "g", "p", "t", "k", "dx", "q", "jh", "ch", "s", "sh", "z",
      "zh", "f", "th", "v", "dh",
      // nasals, semivowels, glides
      "m", "n", "ng", "em", "en", "eng", "nx", "l", "r", "w", "y", "hh",
      "hv", "el",
      // vowels
      "iy", "ih", "eh", "ey", "ae", "aa", "aw", "ay", "ah", "ao", "oy",
      "ow", "uh", "uw", "ux", "er", "ax", "ix", "axr", "ax-h",
      // closures and markers
      "pau", "epi", "h#", "bcl", "dcl", "gcl", "pcl", "tcl", "kcl"};
  return inventory;
}

}  // namespace

std::string normalize_phone(std::string_view phone) {
  std::string out(trim(phone));
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  if (out.size() > 1 && std::isdigit(static_cast<unsigned char>(out.back()))) {
    out.pop_back();
  }
  return out;
}

bool is_arpabet(std::string_view phone) {
  return arpabet_inventory().contains(normalize_phone(phone));
}

std::vector<std::size_t> unknown_phone_rows(const SegmentTable& table) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!is_arpabet(table[i].phone)) out.push_back(i);
  }
  return out;
}

SegmentTable read_segments_csv(std::istream& in) {
  static constexpr std::string_view kHeader[] = {
      "utterance", "start", "end", "phone", "speaker", "dataset", "gender"};

  SegmentTable table;
  std::string line;
  std::size_t line_no = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (!seen_header) {
      if (!std::equal(fields.begin(), fields.end(), std::begin(kHeader),
                      std::end(kHeader))) {
        throw Error(Errc::malformed_line,
                    fmt::format("line {}: expected header "
                                "utterance,start,end,phone,speaker,dataset,"
                                "gender",
                                line_no));
      }
      seen_header = true;
      continue;
    }
    if (fields.size() != 7) {
      throw Error(Errc::malformed_line,
                  fmt::format("line {}: expected 7 fields, got {}", line_no,
                              fields.size()));
    }
    SegmentRow row;
    row.utterance_id = fields[0];
    if (!parse_double(fields[1], row.start) ||
        !parse_double(fields[2], row.end)) {
      throw Error(Errc::malformed_line,
                  fmt::format("line {}: bad time value", line_no));
    }
    row.phone = fields[3];
    row.speaker = fields[4];
    row.dataset = fields[5];
    row.gender = fields[6];
    if (row.utterance_id.empty() || row.phone.empty()) {
      throw Error(Errc::malformed_line,
                  fmt::format("line {}: empty utterance or phone", line_no));
    }
    check_interval(row, line_no);
    table.push_back(std::move(row));
  }
  if (!seen_header) throw Error(Errc::malformed_line, "missing CSV header");
  return table;
}

SegmentTable read_segments_phn(std::istream& in, const PhnSource& source) {
  if (!(source.sample_rate > 0.0)) {
    throw Error(Errc::invalid_argument, ".phn ingestion needs a sample rate");
  }
  SegmentTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string begin, end, phone, extra;
    if (!(fields >> begin)) continue;  // blank
    if (!(fields >> end >> phone) || (fields >> extra)) {
      throw Error(Errc::malformed_line,
                  fmt::format("line {}: expected 'begin end phone'", line_no));
    }
    long long b = 0, e = 0;
    if (!parse_integer(begin, b) || !parse_integer(end, e)) {
      throw Error(Errc::malformed_line,
                  fmt::format("line {}: sample offsets must be integers",
                              line_no));
    }
    SegmentRow row;
    row.utterance_id = source.utterance_id;
    row.start = static_cast<double>(b) / source.sample_rate;
    row.end = static_cast<double>(e) / source.sample_rate;
    row.phone = phone;
    row.speaker = source.speaker;
    row.dataset = source.dataset;
    row.gender = source.gender;
    check_interval(row, line_no);
    table.push_back(std::move(row));
  }
  return table;
}

SegmentTable read_segments(const std::filesystem::path& path,
                           SegmentFormat format, const PhnSource& source) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, fmt::format("cannot open {}", path.string()));
  try {
    if (format == SegmentFormat::csv) return read_segments_csv(in);
    PhnSource src = source;
    if (src.utterance_id.empty()) src.utterance_id = path.stem().string();
    return read_segments_phn(in, src);
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}: {}", path.string(), e.what()));
  }
}

void write_segments_csv(const SegmentTable& table, std::ostream& out) {
  out << "utterance,start,end,phone,speaker,dataset,gender\n";
  for (const auto& r : table) {
    out << r.utterance_id << ',' << format_value(r.start) << ','
        << format_value(r.end) << ',' << r.phone << ',' << r.speaker << ','
        << r.dataset << ',' << r.gender << '\n';
  }
}

}  // namespace repstat
