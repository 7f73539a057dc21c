// core/include/repstat/error.hpp

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

#include <stdexcept>
#include <string>
#include <string_view>

namespace repstat {

/// Classified failure kinds. Every thrown repstat::Error carries exactly one.
enum class Errc {
  io,
  bad_magic,
  unsupported_version,
  unsupported_dtype,
  bad_header,
  unsupported_shape,
  truncated,
  trailing_data,
  non_finite,
  empty_input,
  missing_metadata,
  malformed_line,
  invalid_interval,
  missing_key,
  dangling_path,
  invalid_argument,
  signal_too_short,
  window_too_short,
  no_segments,
  label_mismatch,
  too_few_rows,
  degenerate,
  dimension_mismatch,
  zero_vector,
  too_few_classes,
  unsupported_audio,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace repstat
