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

// Shared fixtures: the seeded random corpus and the `repro` regression suite.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pmetric/exec.hpp"
#include "pmetric/kahn.hpp"
#include "pmetric/search.hpp"

namespace pmetric {

inline constexpr std::size_t kCorpusSize = 500;

/// Corpus member `seed`: n = 1 + seed % 6 with the default ranges.
GeneratorParams corpus_params(std::uint64_t seed);
FinitePMetricSpace corpus_space(std::uint64_t seed);

/// Twenty streams over {0,1}: periodic ones and the built-in programs.
std::vector<kahn::KahnPoint> sample_streams();

struct FixtureResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

/// Runs every fixture, or only the one named `only`; an exception inside a
/// fixture counts as a failure.
std::vector<FixtureResult> run_fixtures(Exec exec = Exec::parallel, std::string_view only = {});

}  // namespace pmetric
