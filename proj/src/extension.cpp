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

#include "pmetric/extension.hpp"

#include "pmetric/errors.hpp"

namespace pmetric {

std::string fresh_label(const FinitePMetricSpace& space) {
  for (char c = 'b'; c <= 'z'; ++c) {
    const std::string candidate(1, c);
    if (!space.index_of(candidate)) return candidate;
  }
  for (std::size_t k = 1;; ++k) {
    auto candidate = "x" + std::to_string(k);
    if (!space.index_of(candidate)) return candidate;
  }
}

ExtensionResult attach_asymmetric_point(const FinitePMetricSpace& space, std::size_t base_point,
                                        const Rational& offset) {
  if (base_point >= space.size()) throw PreconditionError("base point out of range");
  if (!offset.is_positive()) throw PreconditionError("offset must be positive");

  const std::size_t n = space.size();
  const std::size_t m = n + 1;
  std::vector<Rational> entries(m * m);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) entries[x * m + y] = space(x, y);
  }
  for (std::size_t y = 0; y < n; ++y) {
    entries[n * m + y] = space(base_point, y) + offset;
    entries[y * m + n] = space(y, base_point) + offset;
  }
  entries[n * m + n] = space.self(base_point) + offset;

  auto labels = space.labels();
  labels.push_back(fresh_label(space));
  return {FinitePMetricSpace::validate(DistanceTable(std::move(labels), std::move(entries))), n,
          base_point};
}

TwoPointExample build_two_point_example() {
  auto x1 = FinitePMetricSpace::from_rows({"a"}, {{Rational(0)}});
  auto y2 = FinitePMetricSpace::from_rows({"a", "b"}, {{Rational(0), Rational(1)},
                                                       {Rational(1), Rational(1)}});
  return {std::move(x1), std::move(y2), IsometryWitness{IsometryMode::embedding, {0}}};
}

AsymmetricCompletion asymmetric_completion_finite(const FinitePMetricSpace& space,
                                                  std::size_t base_point, Exec exec) {
  auto ext = attach_asymmetric_point(space, base_point);
  const auto old_points = PointSet::of(
      [&] {
        std::vector<std::size_t> v(space.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
        return v;
      }(),
      ext.space.size());
  if (!is_dense(ext.space, old_points).holds) {
    throw std::logic_error("old points are not dense in the extension");
  }
  if (is_symmetrically_dense(ext.space, old_points).holds) {
    throw std::logic_error("old points are symmetrically dense in the extension");
  }
  auto cert = is_p_cauchy_complete_finite(ext.space, exec);
  if (!cert.complete) throw std::logic_error("finite extension failed the completeness certificate");
  return {std::move(ext), std::move(cert)};
}

}  // namespace pmetric
