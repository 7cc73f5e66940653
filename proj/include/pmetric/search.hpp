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

// Random generation and exhaustive search over small partial metric spaces.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmetric/exec.hpp"
#include "pmetric/space.hpp"

namespace pmetric {

struct RationalRange {
  Rational lo;
  Rational hi;
};

struct GeneratorParams {
  std::size_t n = 1;
  std::uint64_t seed = 0;
  RationalRange weight_range{Rational(0), Rational(2)};
  RationalRange metric_range{Rational(1), Rational(3)};
  // Values are drawn from the multiples of 1/denominator inside each range.
  std::int64_t denominator = 4;
};

/// Point labels a, b, ..., z, then x26, x27, ...
std::string point_label(std::size_t i);

/// p(x, y) = d(x, y) + max(w(x), w(y)). The result is validated, so a d that
/// is not a metric surfaces as an AxiomError.
FinitePMetricSpace pmetric_from_metric_and_weights(const std::vector<std::vector<Rational>>& d,
                                                   const std::vector<Rational>& w);

/// d is the shortest-path closure of a complete graph with random edge
/// weights from metric_range; w is drawn from weight_range. Deterministic per
/// seed on every platform (the draw does not go through std distributions).
FinitePMetricSpace random_pmetric(const GeneratorParams& params);

/// Uniform symmetric assignments over the grid until one passes the axioms.
std::optional<FinitePMetricSpace> random_pmetric_rejection(std::size_t n,
                                                           const std::vector<Rational>& grid,
                                                           std::uint64_t seed,
                                                           std::size_t max_attempts = 10000);

/// Sorted, deduplicated grid. Throws PreconditionError on an empty grid or a
/// negative value.
std::vector<Rational> normalize_grid(std::vector<Rational> grid);

/// "0,1/2,1" -> grid.
std::vector<Rational> parse_grid(std::string_view text);

inline constexpr std::size_t kEnumerationBudget = std::size_t{1} << 22;

/// Every symmetric matrix over the grid that passes check_axioms, once each,
/// ordered lexicographically by the upper triangle (row-major). The parallel
/// policy shards the assignment index range and merges by index, so both
/// policies return the same list. Throws BudgetExceeded over max_states.
std::vector<FinitePMetricSpace> enumerate_pmetrics(std::size_t n, const std::vector<Rational>& grid,
                                                   Exec exec = Exec::parallel,
                                                   std::size_t max_states = kEnumerationBudget);

/// Lexicographic comparison of the row-major matrices (sizes first).
bool matrix_less(const FinitePMetricSpace& a, const FinitePMetricSpace& b);

enum class SearchProperty { proper_symmetrically_dense_subset, p_cauchy_incomplete_finite,
                            single_completion_only };

std::string_view property_name(SearchProperty property) noexcept;
std::optional<SearchProperty> parse_property(std::string_view name);

struct SearchBounds {
  std::size_t max_n = 3;
  std::vector<Rational> grid;
  std::size_t extra_points = 1;  // single_completion_only only
};

enum class SearchStatus { found_witness, exhausted_no_witness };

std::string_view status_name(SearchStatus status) noexcept;

struct SearchResult {
  SearchStatus status = SearchStatus::exhausted_no_witness;
  std::optional<FinitePMetricSpace> witness;
  std::string annotation;
  std::size_t states_explored = 0;
};

/// Exhaustive over enumerate_pmetrics for n = 1..max_n.
///   proper_symmetrically_dense_subset  a proper subset that is symmetrically dense
///   p_cauchy_incomplete_finite         a p-Cauchy sequence without p-limit
///   single_completion_only             a space with no second, non-isometric
///                                      completion among the one-point superspaces
///                                      over the grid and the asymmetric extension
/// A found witness is rechecked against the property before it is returned.
SearchResult search_counterexample(SearchProperty property, const SearchBounds& bounds,
                                   Exec exec = Exec::parallel);

/// Complete superspaces with at most extra_points (0 or 1) new points over the
/// grid in which the space is dense, pairwise non-isometric. Each isometry
/// class is represented by its least enumerated matrix (new point last); the
/// result is sorted by matrix_less. The base itself is included when complete.
std::vector<FinitePMetricSpace> classify_completions(const FinitePMetricSpace& space,
                                                     std::size_t extra_points,
                                                     const std::vector<Rational>& grid,
                                                     Exec exec = Exec::parallel);

}  // namespace pmetric
