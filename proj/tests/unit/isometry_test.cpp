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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "pmetric/fixtures.hpp"
#include "pmetric/isometry.hpp"

namespace pmetric {
namespace {

FinitePMetricSpace permuted(const FinitePMetricSpace& s, const std::vector<std::size_t>& perm) {
  // Point i of s becomes point perm[i] of the result.
  const std::size_t n = s.size();
  std::vector<Rational> entries(n * n);
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[perm[i]] = "q" + std::to_string(i);
    for (std::size_t j = 0; j < n; ++j) entries[perm[i] * n + perm[j]] = s(i, j);
  }
  return FinitePMetricSpace::validate(DistanceTable(labels, entries));
}

// Brute force over all injections, in lexicographic order.
std::optional<std::vector<std::size_t>> least_by_brute_force(const FinitePMetricSpace& a,
                                                             const FinitePMetricSpace& b) {
  std::vector<std::size_t> targets(b.size());
  std::iota(targets.begin(), targets.end(), 0);
  std::optional<std::vector<std::size_t>> best;
  do {
    std::vector<std::size_t> m(targets.begin(), targets.begin() + a.size());
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) {
      for (std::size_t j = 0; j < a.size() && ok; ++j) ok = a(i, j) == b(m[i], m[j]);
    }
    if (ok && (!best || m < *best)) best = m;
  } while (std::next_permutation(targets.begin(), targets.end()));
  return best;
}

TEST(Isometry, TwoPointFixture) {
  const auto x = FinitePMetricSpace::from_rows({"a"}, {{0}});
  const auto y = FinitePMetricSpace::from_rows({"a", "b"}, {{0, 1}, {1, 1}});
  const auto w = find_isometry(x, y, IsometryMode::embedding);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->mapping, std::vector<std::size_t>{0});
  EXPECT_FALSE(find_isometry(x, y, IsometryMode::bijection));
  EXPECT_FALSE(find_isometry(y, x, IsometryMode::embedding));
}

TEST(Isometry, RecoversPermutations) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const auto s = corpus_space(seed);
    std::vector<std::size_t> perm(s.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::rotate(perm.begin(), perm.begin() + seed % s.size(), perm.end());
    const auto t = permuted(s, perm);
    const auto w = find_isometry(s, t, IsometryMode::bijection);
    ASSERT_TRUE(w) << seed;
    EXPECT_TRUE(is_isometry(s, t, *w));
    EXPECT_TRUE(is_isometry(t, s, inverse(*w)));
  }
}

TEST(Isometry, WitnessIsLexicographicallyLeast) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto a = corpus_space(seed);
    if (a.size() > 4) continue;
    // Target: a glued next to a copy of itself shifted by one unit.
    const std::size_t n = a.size();
    std::vector<Rational> entries(4 * n * n);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < 2 * n; ++i) {
      labels.push_back("t" + std::to_string(i));
      for (std::size_t j = 0; j < 2 * n; ++j) {
        const bool same = (i < n) == (j < n);
        entries[i * 2 * n + j] = a(i % n, j % n) + (same ? Rational(0) : Rational(5));
      }
    }
    const auto b = FinitePMetricSpace::validate(DistanceTable(labels, entries));
    const auto w = find_isometry(a, b, IsometryMode::embedding);
    const auto brute = least_by_brute_force(a, b);
    ASSERT_EQ(w.has_value(), brute.has_value());
    if (w) EXPECT_EQ(w->mapping, *brute);
  }
}

TEST(Isometry, RecheckRejectsBadWitnesses) {
  const auto y = FinitePMetricSpace::from_rows({"a", "b"}, {{0, 1}, {1, 1}});
  EXPECT_FALSE(is_isometry(y, y, {IsometryMode::bijection, {1, 0}}));
  EXPECT_FALSE(is_isometry(y, y, {IsometryMode::bijection, {0, 0}}));
  EXPECT_FALSE(is_isometry(y, y, {IsometryMode::bijection, {0, 2}}));
  EXPECT_TRUE(is_isometry(y, y, {IsometryMode::bijection, {0, 1}}));
}

}  // namespace
}  // namespace pmetric
