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

#include "pmetric/search.hpp"

#include <algorithm>
#include <random>
#include <utility>

#include "pmetric/errors.hpp"
#include "pmetric/extension.hpp"
#include "pmetric/isometry.hpp"
#include "pmetric/sequence.hpp"

namespace pmetric {

std::string point_label(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "x" + std::to_string(i);
}

FinitePMetricSpace pmetric_from_metric_and_weights(const std::vector<std::vector<Rational>>& d,
                                                   const std::vector<Rational>& w) {
  const std::size_t n = w.size();
  if (n == 0 || d.size() != n) throw PreconditionError("metric and weights disagree on the point count");
  std::vector<std::string> labels;
  std::vector<Rational> entries;
  entries.reserve(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    if (d[x].size() != n) throw PreconditionError("metric matrix is not square");
    labels.push_back(point_label(x));
    for (std::size_t y = 0; y < n; ++y) entries.push_back(d[x][y] + std::max(w[x], w[y]));
  }
  return FinitePMetricSpace::validate(DistanceTable(std::move(labels), std::move(entries)),
                                      Exec::serial);
}

namespace {

// Multiples of 1/den inside [lo, hi], as numerators.
std::pair<std::int64_t, std::int64_t> numerator_bounds(const RationalRange& r, std::int64_t den) {
  if (r.lo.is_negative() || r.hi < r.lo) throw PreconditionError("range must be nonnegative and ordered");
  const Rational lo = r.lo * Rational(den);
  const Rational hi = r.hi * Rational(den);
  // ceil(lo) and floor(hi) for nonnegative values.
  const std::int64_t a = (lo.numerator() + lo.denominator() - 1) / lo.denominator();
  const std::int64_t b = hi.numerator() / hi.denominator();
  if (a > b) throw PreconditionError("range contains no multiple of 1/" + std::to_string(den));
  return {a, b};
}

Rational draw(std::mt19937_64& rng, std::pair<std::int64_t, std::int64_t> bounds, std::int64_t den) {
  const auto span = static_cast<std::uint64_t>(bounds.second - bounds.first) + 1;
  return Rational(bounds.first + static_cast<std::int64_t>(rng() % span), den);
}

}  // namespace

FinitePMetricSpace random_pmetric(const GeneratorParams& params) {
  if (params.n == 0) throw PreconditionError("n must be at least 1");
  if (params.denominator <= 0) throw PreconditionError("denominator must be positive");
  if (!params.metric_range.lo.is_positive()) {
    throw PreconditionError("metric range must be positive so that distinct points stay apart");
  }
  const std::size_t n = params.n;
  const auto den = params.denominator;
  const auto mb = numerator_bounds(params.metric_range, den);
  const auto wb = numerator_bounds(params.weight_range, den);

  std::mt19937_64 rng(params.seed);
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) d[x][y] = d[y][x] = draw(rng, mb, den);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (x != y && d[x][k] + d[k][y] < d[x][y]) d[x][y] = d[x][k] + d[k][y];
      }
    }
  }
  std::vector<Rational> w(n);
  for (auto& v : w) v = draw(rng, wb, den);
  return pmetric_from_metric_and_weights(d, w);
}

std::vector<Rational> normalize_grid(std::vector<Rational> grid) {
  if (grid.empty()) throw PreconditionError("grid is empty");
  for (const auto& v : grid) {
    if (v.is_negative()) throw PreconditionError("grid value " + v.str() + " is negative");
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::vector<Rational> parse_grid(std::string_view text) {
  std::vector<Rational> grid;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    grid.push_back(Rational::parse(text.substr(start, end - start)));
    start = end + 1;
  }
  return normalize_grid(std::move(grid));
}

namespace {

std::optional<FinitePMetricSpace> table_if_valid(std::size_t n, const std::vector<Rational>& grid,
                                                 const std::vector<std::size_t>& digits) {
  std::vector<Rational> entries(n * n);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) entries[i * n + j] = entries[j * n + i] = grid[digits[pos++]];
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(point_label(i));
  DistanceTable table(std::move(labels), std::move(entries));
  if (!check_axioms(table, Exec::serial).passed()) return std::nullopt;
  return FinitePMetricSpace::validate(std::move(table), Exec::serial);
}

void decode(std::size_t index, std::size_t base, std::vector<std::size_t>& digits) {
  for (std::size_t k = digits.size(); k-- > 0;) {
    digits[k] = index % base;
    index /= base;
  }
}

}  // namespace

std::optional<FinitePMetricSpace> random_pmetric_rejection(std::size_t n,
                                                           const std::vector<Rational>& grid_in,
                                                           std::uint64_t seed,
                                                           std::size_t max_attempts) {
  if (n == 0) throw PreconditionError("n must be at least 1");
  const auto grid = normalize_grid(grid_in);
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> digits(n * (n + 1) / 2);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    for (auto& dgt : digits) dgt = rng() % grid.size();
    if (auto s = table_if_valid(n, grid, digits)) return s;
  }
  return std::nullopt;
}

std::vector<FinitePMetricSpace> enumerate_pmetrics(std::size_t n, const std::vector<Rational>& grid_in,
                                                   Exec exec, std::size_t max_states) {
  if (n == 0) throw PreconditionError("n must be at least 1");
  const auto grid = normalize_grid(grid_in);
  const std::size_t positions = n * (n + 1) / 2;
  std::size_t states = 1;
  for (std::size_t k = 0; k < positions; ++k) {
    if (states > max_states / grid.size()) {
      throw BudgetExceeded("enumeration over " + std::to_string(grid.size()) + "^" +
                               std::to_string(positions) + " assignments refused",
                           max_states + 1, max_states);
    }
    states *= grid.size();
  }

  std::vector<std::pair<std::size_t, FinitePMetricSpace>> found;
  if (exec == Exec::serial) {
    std::vector<std::size_t> digits(positions);
    for (std::size_t s = 0; s < states; ++s) {
      decode(s, grid.size(), digits);
      if (auto sp = table_if_valid(n, grid, digits)) found.emplace_back(s, std::move(*sp));
    }
  } else {
    const auto total = static_cast<std::int64_t>(states);
#pragma omp parallel
    {
      std::vector<std::pair<std::size_t, FinitePMetricSpace>> local;
      std::vector<std::size_t> digits(positions);
#pragma omp for schedule(static) nowait
      for (std::int64_t s = 0; s < total; ++s) {
        decode(static_cast<std::size_t>(s), grid.size(), digits);
        if (auto sp = table_if_valid(n, grid, digits)) {
          local.emplace_back(static_cast<std::size_t>(s), std::move(*sp));
        }
      }
#pragma omp critical(pmetric_enumerate_merge)
      for (auto& item : local) found.push_back(std::move(item));
    }
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }

  std::vector<FinitePMetricSpace> out;
  out.reserve(found.size());
  for (auto& item : found) out.push_back(std::move(item.second));
  return out;
}

bool matrix_less(const FinitePMetricSpace& a, const FinitePMetricSpace& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  const auto x = a.table().entries();
  const auto y = b.table().entries();
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

std::string_view property_name(SearchProperty property) noexcept {
  switch (property) {
    case SearchProperty::proper_symmetrically_dense_subset: return "properSymmetricallyDenseSubset";
    case SearchProperty::p_cauchy_incomplete_finite: return "pCauchyIncompleteFinite";
    case SearchProperty::single_completion_only: return "singleCompletionOnly";
  }
  return "?";
}

std::optional<SearchProperty> parse_property(std::string_view name) {
  for (auto p : {SearchProperty::proper_symmetrically_dense_subset,
                 SearchProperty::p_cauchy_incomplete_finite, SearchProperty::single_completion_only}) {
    if (property_name(p) == name) return p;
  }
  return std::nullopt;
}

std::string_view status_name(SearchStatus status) noexcept {
  return status == SearchStatus::found_witness ? "foundWitness" : "exhaustedNoWitness";
}

namespace {

PointSet old_points(std::size_t n, std::size_t universe) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return PointSet::of(std::move(v), universe);
}

// A second, non-isometric completion of the space, described, if one exists.
std::optional<std::string> second_completion(const FinitePMetricSpace& space,
                                             std::size_t extra_points,
                                             const std::vector<Rational>& grid, Exec exec) {
  const auto classes = classify_completions(space, extra_points, grid, exec);
  if (classes.size() >= 2) {
    return std::to_string(classes.size()) + " non-isometric completions on the grid";
  }
  // The asymmetric one-point extension is off-grid in general.
  const auto ext = attach_asymmetric_point(space, 0);
  const bool dense = is_dense(ext.space, old_points(space.size(), ext.space.size())).holds;
  if (dense && is_p_cauchy_complete_finite(ext.space, Exec::serial).complete) {
    return "asymmetric extension at " + space.label(0);
  }
  return std::nullopt;
}

}  // namespace

SearchResult search_counterexample(SearchProperty property, const SearchBounds& bounds, Exec exec) {
  const auto grid = normalize_grid(bounds.grid);
  SearchResult result;
  std::size_t spaces = 0;
  for (std::size_t n = 1; n <= bounds.max_n; ++n) {
    for (const auto& space : enumerate_pmetrics(n, grid, exec)) {
      ++spaces;
      switch (property) {
        case SearchProperty::proper_symmetrically_dense_subset: {
          const std::size_t masks = std::size_t{1} << n;
          for (std::size_t mask = 1; mask + 1 < masks; ++mask) {
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < n; ++i) {
              if (mask >> i & 1U) idx.push_back(i);
            }
            ++result.states_explored;
            const auto subset = PointSet::of(idx, n);
            if (is_symmetrically_dense(space, subset).holds &&
                symmetric_denseness_by_collapse(space, subset)) {
              result.status = SearchStatus::found_witness;
              result.witness = space;
              result.annotation = "subset of size " + std::to_string(idx.size()) +
                                  " is symmetrically dense";
              return result;
            }
          }
          break;
        }
        case SearchProperty::p_cauchy_incomplete_finite: {
          ++result.states_explored;
          const auto cert = is_p_cauchy_complete_finite(space, exec);
          if (!cert.complete) {
            const auto& seq = cert.counterexamples.front();
            if (classify(space, seq).p_cauchy && !classify(space, seq).p_converges()) {
              result.status = SearchStatus::found_witness;
              result.witness = space;
              result.annotation = "sequence " + format_sequence(space, seq) + " has no p-limit";
              return result;
            }
          }
          break;
        }
        case SearchProperty::single_completion_only: {
          ++result.states_explored;
          if (!second_completion(space, bounds.extra_points, grid, exec)) {
            // Recheck before reporting.
            if (classify_completions(space, bounds.extra_points, grid, Exec::serial).size() < 2) {
              result.status = SearchStatus::found_witness;
              result.witness = space;
              result.annotation = "no second completion found";
              return result;
            }
          }
          break;
        }
      }
    }
  }
  result.annotation = std::to_string(spaces) + " spaces searched";
  return result;
}

std::vector<FinitePMetricSpace> classify_completions(const FinitePMetricSpace& space,
                                                     std::size_t extra_points,
                                                     const std::vector<Rational>& grid_in,
                                                     Exec exec) {
  if (extra_points > 1) {
    throw BudgetExceeded("at most one extra point is supported", extra_points, 1);
  }
  const auto grid = normalize_grid(grid_in);
  const std::size_t n = space.size();

  std::vector<FinitePMetricSpace> accepted;
  if (is_p_cauchy_complete_finite(space, exec).complete) accepted.push_back(space);

  if (extra_points == 1) {
    const std::size_t m = n + 1;
    std::size_t states = 1;
    for (std::size_t k = 0; k < m; ++k) {
      if (states > kEnumerationBudget / grid.size()) {
        throw BudgetExceeded("superspace enumeration refused", kEnumerationBudget + 1,
                             kEnumerationBudget);
      }
      states *= grid.size();
    }
    auto labels = space.labels();
    labels.push_back(fresh_label(space));
    const auto olds = old_points(n, m);
    std::vector<std::size_t> digits(m);
    for (std::size_t s = 0; s < states; ++s) {
      decode(s, grid.size(), digits);
      std::vector<Rational> entries(m * m);
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) entries[x * m + y] = space(x, y);
        entries[x * m + n] = entries[n * m + x] = grid[digits[x]];
      }
      entries[n * m + n] = grid[digits[n]];
      DistanceTable table(labels, std::move(entries));
      if (!check_axioms(table, Exec::serial).passed()) continue;
      auto super = FinitePMetricSpace::validate(std::move(table), Exec::serial);
      if (!is_dense(super, olds).holds) continue;
      if (!is_p_cauchy_complete_finite(super, exec).complete) continue;
      accepted.push_back(std::move(super));
    }
  }

  std::stable_sort(accepted.begin(), accepted.end(), matrix_less);
  std::vector<FinitePMetricSpace> out;
  for (auto& candidate : accepted) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](const FinitePMetricSpace& kept) {
      return kept.size() == candidate.size() &&
             find_isometry(kept, candidate, IsometryMode::bijection).has_value();
    });
    if (!seen) out.push_back(std::move(candidate));
  }
  return out;
}

}  // namespace pmetric
