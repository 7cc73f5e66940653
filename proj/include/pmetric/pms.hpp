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

// The .pms text format (grammar in docs/pms-format.md):
//
//   pms 1
//   points 2
//   labels a b
//   matrix
//   0 1
//   1 1
//
// '#' starts a comment; blank lines are ignored.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pmetric/space.hpp"

namespace pmetric {

/// Parses exactly one block. Structural problems throw ParseError with the
/// 1-based line number; the axioms are not checked here.
DistanceTable parse_pms(std::string_view text);

/// Parses a stream of blocks, each starting at a "pms" header line.
std::vector<DistanceTable> parse_pms_stream(std::string_view text);

/// Canonical form: single spaces, reduced rationals, no comments, trailing newline.
std::string emit_pms(const DistanceTable& table);
inline std::string emit_pms(const FinitePMetricSpace& space) { return emit_pms(space.table()); }

/// Reads a whole file, or standard input `in` when path is "-".
std::string read_source(const std::string& path, std::istream& in);

}  // namespace pmetric
