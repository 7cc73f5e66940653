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

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "pmetric/extension.hpp"
#include "pmetric/kahn.hpp"
#include "pmetric/search.hpp"
#include "pmetric/sequence.hpp"

namespace {

using pmetric::Exec;
using pmetric::Rational;

Exec policy(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) ? "parallel/" + std::to_string(pmetric::max_threads()) : "serial");
}

// Triangle sweep over all words of length <= depth.
void BM_CheckAxiomsTruncation(benchmark::State& state) {
  const auto space = pmetric::kahn::truncate(pmetric::kahn::Alphabet("012"),
                                             static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pmetric::check_axioms(space.table(), policy(state)));
  }
  state.counters["points"] = static_cast<double>(space.size());
  label(state);
}
BENCHMARK(BM_CheckAxiomsTruncation)->ArgsProduct({{0, 1}, {4, 5}})->Unit(benchmark::kMillisecond);

// Exhaustive completeness certificate on an asymmetric extension.
void BM_CompletenessCertificate(benchmark::State& state) {
  pmetric::GeneratorParams p;
  p.n = static_cast<std::size_t>(state.range(1));
  p.seed = 7;
  const auto ext = pmetric::attach_asymmetric_point(pmetric::random_pmetric(p), 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pmetric::is_p_cauchy_complete_finite(ext.space, policy(state)));
  }
  label(state);
}
BENCHMARK(BM_CompletenessCertificate)->ArgsProduct({{0, 1}, {4, 5}})->Unit(benchmark::kMillisecond);

void BM_EnumeratePmetrics(benchmark::State& state) {
  const std::vector<Rational> grid{Rational(0), Rational(1, 2), Rational(1)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        pmetric::enumerate_pmetrics(static_cast<std::size_t>(state.range(1)), grid, policy(state)));
  }
  label(state);
}
BENCHMARK(BM_EnumeratePmetrics)->ArgsProduct({{0, 1}, {3, 4}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
