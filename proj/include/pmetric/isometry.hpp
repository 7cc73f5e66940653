/*
 * Copyright 2026 The pmetric Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "pmetric/space.hpp"

namespace pmetric {

enum class IsometryMode { bijection, embedding };

std::string_view mode_name(IsometryMode mode) noexcept;

/// mapping[i] is the target index of source point i.
struct IsometryWitness {
  IsometryMode mode = IsometryMode::embedding;
  std::vector<std::size_t> mapping;

  friend bool operator==(const IsometryWitness&, const IsometryWitness&) = default;
};

/// Entry-by-entry recheck: injective, in range, distance preserving, and
/// onto when mode is bijection.
bool is_isometry(const FinitePMetricSpace& source, const FinitePMetricSpace& target,
                 const IsometryWitness& witness);

/// Exhaustive backtracking in source-index order, trying target indices in
/// increasing order, so the first witness found is the lexicographically
/// least one. Candidates are pruned by self-distance, and the whole search is
/// skipped when the self-distance multisets rule it out.
std::optional<IsometryWitness> find_isometry(const FinitePMetricSpace& source,
                                             const FinitePMetricSpace& target, IsometryMode mode);

/// Inverse of a bijective witness.
IsometryWitness inverse(const IsometryWitness& witness);

}  // namespace pmetric
