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

#include "pmetric/errors.hpp"
#include "pmetric/extension.hpp"
#include "pmetric/fixtures.hpp"

namespace pmetric {
namespace {

PointSet old_points(std::size_t n, std::size_t universe) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return PointSet::of(v, universe);
}

TEST(Extension, OnePointBecomesTwoPoint) {
  const auto ex = build_two_point_example();
  const auto ext = attach_asymmetric_point(ex.one_point, 0);
  EXPECT_EQ(ext.space, ex.two_point);
  EXPECT_EQ(ext.new_point, 1U);
  EXPECT_EQ(ext.space.label(1), "b");
}

TEST(Extension, EntriesFollowTheBasePoint) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = corpus_space(seed);
    for (std::size_t base = 0; base < s.size(); ++base) {
      const Rational offset(1 + seed % 3, 2);
      const auto e = attach_asymmetric_point(s, base, offset);
      const auto b = e.new_point;
      for (std::size_t y = 0; y < s.size(); ++y) {
        EXPECT_EQ(e.space(b, y), s(base, y) + offset);
        EXPECT_EQ(e.space(y, b), s(base, y) + offset);
      }
      EXPECT_EQ(e.space.self(b), s.self(base) + offset);
      EXPECT_EQ(e.space.restrict_to(old_points(s.size(), s.size() + 1)), s);
      const auto olds = old_points(s.size(), s.size() + 1);
      EXPECT_TRUE(is_dense(e.space, olds).holds);
      const auto sym = is_symmetrically_dense(e.space, olds);
      EXPECT_FALSE(sym.holds);
      EXPECT_EQ(sym.counterexample, b);
      // b is outside every ball of radius <= offset around an old point.
      for (std::size_t y = 0; y < s.size(); ++y) {
        EXPECT_FALSE(open_ball(e.space, y, offset).contains(b));
      }
    }
  }
}

TEST(Extension, RejectsBadArguments) {
  const auto x = build_two_point_example().one_point;
  EXPECT_THROW(attach_asymmetric_point(x, 1), PreconditionError);
  EXPECT_THROW(attach_asymmetric_point(x, 0, Rational(0)), PreconditionError);
}

TEST(Extension, FreshLabelsSkipUsedNames) {
  const auto s = FinitePMetricSpace::from_rows({"a", "b"}, {{0, 1}, {1, 1}});
  EXPECT_EQ(fresh_label(s), "c");
  std::vector<std::string> names;
  for (char c = 'a'; c <= 'z'; ++c) names.emplace_back(1, c);
  std::vector<std::vector<Rational>> rows(26, std::vector<Rational>(26, Rational(2)));
  for (std::size_t i = 0; i < 26; ++i) rows[i][i] = Rational(1);
  EXPECT_EQ(fresh_label(FinitePMetricSpace::from_rows(names, rows)), "x1");
}

TEST(Extension, AsymmetricCompletionIsCertified) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto s = corpus_space(seed);
    if (s.size() > 4) continue;
    const auto c = asymmetric_completion_finite(s, seed % s.size(), Exec::serial);
    EXPECT_TRUE(c.certificate.complete);
    EXPECT_EQ(c.extension.space.size(), s.size() + 1);
  }
}

}  // namespace
}  // namespace pmetric
