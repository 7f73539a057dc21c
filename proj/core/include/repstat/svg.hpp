// core/include/repstat/svg.hpp

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
#include <string>

#include "repstat/sweep.hpp"

namespace repstat {

/// Self-contained SVG 1.1 line chart: one polyline per (model, metric)
/// series, layer on x, value on y. Identical reports give identical bytes.
std::string render_svg(const SweepReport& report, const std::string& title = {});
void emit_svg(const SweepReport& report, const std::filesystem::path& path,
              const std::string& title = {});

}  // namespace repstat
