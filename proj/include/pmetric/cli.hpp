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

#include <iosfwd>
#include <string>
#include <vector>

namespace pmetric::cli {

// Exit codes.
inline constexpr int kTrue = 0;       // verdict true, or success
inline constexpr int kFalse = 1;      // verdict false
inline constexpr int kUsage = 2;      // usage or parse error
inline constexpr int kViolation = 3;  // input fails the axioms

/// Runs one command line (without the program name). `in` backs the "-"
/// path; reports and .pms output go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace pmetric::cli
