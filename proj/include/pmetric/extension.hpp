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

#include <cstddef>

#include "pmetric/isometry.hpp"
#include "pmetric/sequence.hpp"
#include "pmetric/space.hpp"

namespace pmetric {

struct ExtensionResult {
  FinitePMetricSpace space;
  std::size_t new_point = 0;
  std::size_t base_point = 0;
};

/// Attaches one point b to X with
///
///   p(b, y) = p(y, b) = p(base, y) + offset   for y in X,
///   p(b, b)           = p(base, base) + offset.
///
/// The old points keep their indices and b is appended. The old points are
/// dense in the result but not symmetrically dense (b lies outside every ball
/// of radius < offset around old points). offset defaults to 1; any offset
/// must be positive and the result is re-validated by the axiom checker.
ExtensionResult attach_asymmetric_point(const FinitePMetricSpace& space, std::size_t base_point,
                                        const Rational& offset = Rational(1));

/// First label not in use from b, c, ..., z, then x1, x2, ...
std::string fresh_label(const FinitePMetricSpace& space);

struct TwoPointExample {
  FinitePMetricSpace one_point;   // {a}, p(a,a) = 0
  FinitePMetricSpace two_point;   // {a,b}, p(a,a) = 0, other entries 1
  IsometryWitness inclusion;      // a -> a
};

TwoPointExample build_two_point_example();

struct AsymmetricCompletion {
  ExtensionResult extension;
  CompletenessCertificate certificate;
};

/// attach_asymmetric_point() plus a p-Cauchy completeness certificate for the
/// finite output, which makes it a completion of the input in which the input
/// is dense but not symmetrically dense. Throws std::logic_error if any of the
/// three properties fails to re-check.
AsymmetricCompletion asymmetric_completion_finite(const FinitePMetricSpace& space,
                                                  std::size_t base_point,
                                                  Exec exec = Exec::parallel);

}  // namespace pmetric
