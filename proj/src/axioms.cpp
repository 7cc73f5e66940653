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

// Axiom checking. P1-P3 are O(n^2) and always serial; the P4 triangle sweep
// is the O(n^3) kernel with a serial reference loop and an OpenMP loop over
// the outer index.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pmetric/space.hpp"

namespace pmetric {

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

// Entries rescaled to a common denominator. |value| < 2^61 so that any
// difference of two entries fits in int64.
struct ScaledMatrix {
  std::size_t n = 0;
  std::vector<std::int64_t> values;
};

std::optional<ScaledMatrix> scale(const DistanceTable& t) {
  constexpr std::int64_t kLimit = std::int64_t{1} << 61;
  std::int64_t common = 1;
  for (const auto& r : t.entries()) {
    const std::int64_t g = std::gcd(common, r.denominator());
    const __int128 next = static_cast<__int128>(common / g) * r.denominator();
    if (next >= kLimit) return std::nullopt;
    common = static_cast<std::int64_t>(next);
  }
  ScaledMatrix m;
  m.n = t.size();
  m.values.reserve(t.entries().size());
  for (const auto& r : t.entries()) {
    const __int128 v = static_cast<__int128>(r.numerator()) * (common / r.denominator());
    if (v >= kLimit || v <= -kLimit) return std::nullopt;
    m.values.push_back(static_cast<std::int64_t>(v));
  }
  return m;
}

// Violations of P4 with outer index i, in (j, k) order.
void p4_row_scaled(const ScaledMatrix& m, const DistanceTable& t, std::size_t i,
                   std::vector<Violation>& out) {
  const std::size_t n = m.n;
  const std::int64_t* row_i = m.values.data() + i * n;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    const std::int64_t* row_j = m.values.data() + j * n;
    // p(i,k) + p(j,j) <= p(i,j) + p(j,k)  <=>  p(i,k) - p(j,k) <= p(i,j) - p(j,j)
    const std::int64_t bound = row_i[j] - row_j[j];
    std::int64_t worst = row_i[0] - row_j[0];
    for (std::size_t k = 1; k < n; ++k) worst = std::max(worst, row_i[k] - row_j[k]);
    if (worst <= bound) continue;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j || row_i[k] - row_j[k] <= bound) continue;
      out.push_back({Axiom::P4, {i, j, k}, t(i, k) + t(j, j), t(i, j) + t(j, k)});
    }
  }
}

void p4_row_rational(const DistanceTable& t, std::size_t i, std::vector<Violation>& out) {
  const std::size_t n = t.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      Rational lhs = t(i, k) + t(j, j);
      Rational rhs = t(i, j) + t(j, k);
      if (lhs > rhs) out.push_back({Axiom::P4, {i, j, k}, std::move(lhs), std::move(rhs)});
    }
  }
}

std::vector<Violation> p4_sweep(const DistanceTable& t, Exec exec) {
  const std::size_t n = t.size();
  const auto scaled = scale(t);
  std::vector<std::vector<Violation>> per_row(n);
  auto row = [&](std::size_t i) {
    if (scaled) {
      p4_row_scaled(*scaled, t, i, per_row[i]);
    } else {
      p4_row_rational(t, i, per_row[i]);
    }
  };

  if (exec == Exec::serial || n < 32) {
    for (std::size_t i = 0; i < n; ++i) row(i);
  } else {
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < count; ++i) row(static_cast<std::size_t>(i));
  }

  std::vector<Violation> out;
  for (auto& v : per_row) {
    std::move(v.begin(), v.end(), std::back_inserter(out));
  }
  return out;
}

}  // namespace

AxiomReport check_axioms(const DistanceTable& t, Exec exec) {
  const std::size_t n = t.size();
  AxiomReport report;
  auto& out = report.violations;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& s = t(i, i);
      if (s == t(j, j) && (t(i, j) == s || t(j, i) == s)) {
        out.push_back({Axiom::P1, {i, j}, s, t(j, j)});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && t(i, i) > t(i, j)) out.push_back({Axiom::P2, {i, j}, t(i, i), t(i, j)});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (t(i, j) != t(j, i)) out.push_back({Axiom::P3, {i, j}, t(i, j), t(j, i)});
    }
  }
  auto p4 = p4_sweep(t, exec);
  std::move(p4.begin(), p4.end(), std::back_inserter(out));
  return report;
}

}  // namespace pmetric
