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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pmetric/exec.hpp"
#include "pmetric/rational.hpp"

namespace pmetric {

/// Labelled square table of nonnegative rationals, stored row-major.
///
/// Only structural invariants are enforced here (square, n >= 1, distinct
/// non-empty labels without whitespace, nonnegative entries); violations
/// throw MalformedInput. Whether the table is a partial metric is the job of
/// check_axioms().
class DistanceTable {
 public:
  DistanceTable(std::vector<std::string> labels, std::vector<Rational> entries);
  DistanceTable(std::vector<std::string> labels, const std::vector<std::vector<Rational>>& rows);

  [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
  [[nodiscard]] const Rational& operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * labels_.size() + j];
  }
  [[nodiscard]] std::span<const Rational> entries() const noexcept { return entries_; }
  [[nodiscard]] std::span<const Rational> row(std::size_t i) const noexcept {
    return std::span<const Rational>(entries_).subspan(i * size(), size());
  }

  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
  [[nodiscard]] const std::string& label(std::size_t i) const { return labels_.at(i); }
  [[nodiscard]] std::optional<std::size_t> index_of(std::string_view label) const;

  friend bool operator==(const DistanceTable&, const DistanceTable&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<Rational> entries_;
};

enum class Axiom { P1, P2, P3, P4 };

std::string_view axiom_name(Axiom axiom) noexcept;

/// One failing instance of an axiom.
///
///   P1: indices (i, j), lhs = p(i,i), rhs = p(j,j); both equal p(i,j) or p(j,i).
///   P2: indices (i, j), lhs = p(i,i), rhs = p(i,j) with lhs > rhs.
///   P3: indices (i, j), lhs = p(i,j), rhs = p(j,i) with lhs != rhs.
///   P4: indices (i, j, k), lhs = p(i,k) + p(j,j), rhs = p(i,j) + p(j,k) with lhs > rhs.
struct Violation {
  Axiom axiom;
  std::vector<std::size_t> indices;
  Rational lhs;
  Rational rhs;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct AxiomReport {
  std::vector<Violation> violations;

  [[nodiscard]] bool passed() const noexcept { return violations.empty(); }
};

/// Lists every violated instance of P1-P4, ordered by axiom then index tuple.
/// The P4 sweep is the O(n^3) part and runs on exact scaled integers when
/// the common denominator allows it, falling back to rational arithmetic.
AxiomReport check_axioms(const DistanceTable& table, Exec exec = Exec::parallel);

/// Re-evaluates a reported violation directly against the table.
bool violation_holds(const DistanceTable& table, const Violation& violation);

class AxiomError : public std::runtime_error {
 public:
  explicit AxiomError(AxiomReport report);
  [[nodiscard]] const AxiomReport& report() const noexcept { return report_; }

 private:
  AxiomReport report_;
};

class PointSet;

/// A DistanceTable known to satisfy P1-P4.
class FinitePMetricSpace {
 public:
  /// Throws AxiomError carrying the full report if any axiom fails.
  static FinitePMetricSpace validate(DistanceTable table, Exec exec = Exec::parallel);
  static FinitePMetricSpace from_rows(std::vector<std::string> labels,
                                      const std::vector<std::vector<Rational>>& rows);

  [[nodiscard]] std::size_t size() const noexcept { return table_.size(); }
  [[nodiscard]] const Rational& operator()(std::size_t i, std::size_t j) const noexcept {
    return table_(i, j);
  }
  [[nodiscard]] const Rational& self(std::size_t i) const noexcept { return table_(i, i); }
  [[nodiscard]] const DistanceTable& table() const noexcept { return table_; }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return table_.labels(); }
  [[nodiscard]] const std::string& label(std::size_t i) const { return table_.label(i); }
  [[nodiscard]] std::optional<std::size_t> index_of(std::string_view label) const {
    return table_.index_of(label);
  }

  /// Subspace on the given points, in PointSet order.
  [[nodiscard]] FinitePMetricSpace restrict_to(const PointSet& points) const;

  friend bool operator==(const FinitePMetricSpace&, const FinitePMetricSpace&) = default;

 private:
  explicit FinitePMetricSpace(DistanceTable table) : table_(std::move(table)) {}

  DistanceTable table_;
};

/// Strictly increasing list of point indices below a universe size.
class PointSet {
 public:
  PointSet() = default;

  /// Sorts the indices; throws MalformedInput on duplicates or out-of-range.
  static PointSet of(std::vector<std::size_t> indices, std::size_t universe);
  static PointSet all(std::size_t universe);

  [[nodiscard]] bool contains(std::size_t i) const noexcept;
  [[nodiscard]] bool is_subset_of(const PointSet& other) const noexcept;
  [[nodiscard]] std::size_t size() const noexcept { return indices_.size(); }
  [[nodiscard]] bool empty() const noexcept { return indices_.empty(); }
  [[nodiscard]] const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  [[nodiscard]] auto begin() const noexcept { return indices_.begin(); }
  [[nodiscard]] auto end() const noexcept { return indices_.end(); }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::vector<std::size_t> indices_;
};

/// B_eps(center) = { y : p(center, y) < p(center, center) + eps }.
/// Throws InvalidRadius for eps <= 0.
PointSet open_ball(const FinitePMetricSpace& space, std::size_t center, const Rational& epsilon);

struct DensenessVerdict {
  bool holds = false;
  // witness[x]: least subset point approximating x, if any.
  std::vector<std::optional<std::size_t>> witness;
  // Least point with no witness.
  std::optional<std::size_t> counterexample;
};

/// Topological denseness. In a finite space the quantifier over eps
/// eliminates: x is approximated by y iff p(x,y) = p(x,x).
DensenessVerdict is_dense(const FinitePMetricSpace& space, const PointSet& subset);

/// Symmetric denseness via the exact criterion p(x,y) = p(x,x) = p(y,y).
/// The result is cross-checked against the P1 collapse (subset == all points)
/// and a mismatch throws std::logic_error.
DensenessVerdict is_symmetrically_dense(const FinitePMetricSpace& space, const PointSet& subset);

/// In a finite pmetric space the symmetric criterion forces y = x, so the
/// subset is symmetrically dense iff it is the whole space.
bool symmetric_denseness_by_collapse(const FinitePMetricSpace& space, const PointSet& subset);

/// Ball-based definitions at a single radius (no quantifier elimination).
bool is_dense_at(const FinitePMetricSpace& space, const PointSet& subset, const Rational& epsilon);
bool is_symmetrically_dense_at(const FinitePMetricSpace& space, const PointSet& subset,
                               const Rational& epsilon);

}  // namespace pmetric
