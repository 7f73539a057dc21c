// core/include/repstat/cka.hpp

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
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "repstat/matrix.hpp"
#include "repstat/sweep.hpp"
#include "repstat/types.hpp"

namespace repstat {

enum class CkaVariant {
  literal_corr,      // Pearson correlation of vec(X X^T) and vec(Y Y^T)
  centered_feature,  // HSIC-normalized CKA on column-centered X, Y
};

std::string_view to_string(CkaVariant v) noexcept;
std::optional<CkaVariant> parse_cka_variant(std::string_view text) noexcept;

struct CkaOptions {
  /// Rows per work item when streaming Gram rows. Gram matrices are never
  /// materialized by linear_cka; the result does not depend on this.
  std::size_t block_rows = 256;
  /// 0: use default_thread_count().
  std::size_t threads = 0;
};

/// X X^T in double precision. Needs at least two rows.
MatrixD gram(const MatrixD& x);

double linear_cka(const MatrixD& x, const MatrixD& y, CkaVariant variant,
                  const CkaOptions& options = {});
double linear_cka(const PooledMatrix& x, const PooledMatrix& y,
                  CkaVariant variant, const CkaOptions& options = {});

struct NamedMatrix {
  std::string name;
  const PooledMatrix* matrix = nullptr;
};

/// CKA of every layer against `target`, followed by one layer-0 row per
/// baseline. `target_name` fills the metric column.
SweepReport cka_sweep(const LayerStack& stack, const PooledMatrix& target,
                      std::string_view target_name, CkaVariant variant,
                      const std::vector<NamedMatrix>& baselines = {},
                      const CkaOptions& options = {});

}  // namespace repstat
