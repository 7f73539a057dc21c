// core/include/repstat/segments.hpp

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
#include <iosfwd>
#include <string>
#include <string_view>

#include "repstat/types.hpp"

namespace repstat {

enum class SegmentFormat { csv, timit_phn };

/// Labels attached to every row of a .phn file, which stores only
/// sample offsets and phone symbols.
struct PhnSource {
  double sample_rate = 16000.0;
  std::string utterance_id;  // file stem when empty
  std::string speaker;
  std::string dataset;
  std::string gender;
};

/// CSV header: utterance,start,end,phone,speaker,dataset,gender
SegmentTable read_segments_csv(std::istream& in);
SegmentTable read_segments_phn(std::istream& in, const PhnSource& source);

SegmentTable read_segments(const std::filesystem::path& path,
                           SegmentFormat format, const PhnSource& source = {});

void write_segments_csv(const SegmentTable& table, std::ostream& out);

/// True for symbols of the TIMIT/ARPABET inventory (case-insensitive,
/// stress digits ignored).
bool is_arpabet(std::string_view phone);

/// Lowercase with trailing stress digit removed ("AH0" -> "ah").
std::string normalize_phone(std::string_view phone);

/// Rows whose phone is outside the inventory.
std::vector<std::size_t> unknown_phone_rows(const SegmentTable& table);

}  // namespace repstat
