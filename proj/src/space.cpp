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

#include "pmetric/space.hpp"

#include <algorithm>
#include <unordered_set>

#include "pmetric/errors.hpp"

namespace pmetric {

DistanceTable::DistanceTable(std::vector<std::string> labels, std::vector<Rational> entries)
    : labels_(std::move(labels)), entries_(std::move(entries)) {
  const std::size_t n = labels_.size();
  if (n == 0) throw MalformedInput("a space needs at least one point");
  if (entries_.size() != n * n) {
    throw MalformedInput("matrix has " + std::to_string(entries_.size()) + " entries, expected " +
                         std::to_string(n * n));
  }
  std::unordered_set<std::string> seen;
  for (const auto& label : labels_) {
    if (label.empty()) throw MalformedInput("empty point label");
    if (label.find_first_of(" \t\r\n") != std::string::npos) {
      throw MalformedInput("label '" + label + "' contains whitespace");
    }
    if (!seen.insert(label).second) throw MalformedInput("duplicate label '" + label + "'");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if ((*this)(i, j).is_negative()) {
        throw MalformedInput("negative entry at (" + labels_[i] + "," + labels_[j] + ")");
      }
    }
  }
}

namespace {

std::vector<Rational> flatten(const std::vector<std::vector<Rational>>& rows, std::size_t n) {
  if (rows.size() != n) {
    throw MalformedInput("matrix has " + std::to_string(rows.size()) + " rows, expected " +
                         std::to_string(n));
  }
  std::vector<Rational> out;
  out.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw MalformedInput("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                           " entries, expected " + std::to_string(n));
    }
    out.insert(out.end(), rows[i].begin(), rows[i].end());
  }
  return out;
}

}  // namespace

DistanceTable::DistanceTable(std::vector<std::string> labels,
                             const std::vector<std::vector<Rational>>& rows)
    : DistanceTable(labels, flatten(rows, labels.size())) {}

std::optional<std::size_t> DistanceTable::index_of(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::string_view axiom_name(Axiom axiom) noexcept {
  switch (axiom) {
    case Axiom::P1: return "P1";
    case Axiom::P2: return "P2";
    case Axiom::P3: return "P3";
    case Axiom::P4: return "P4";
  }
  return "?";
}

bool violation_holds(const DistanceTable& t, const Violation& v) {
  const auto& ix = v.indices;
  switch (v.axiom) {
    case Axiom::P1: {
      if (ix.size() != 2 || ix[0] == ix[1]) return false;
      const auto& s = t(ix[0], ix[0]);
      return s == t(ix[1], ix[1]) && (t(ix[0], ix[1]) == s || t(ix[1], ix[0]) == s) &&
             v.lhs == s && v.rhs == t(ix[1], ix[1]);
    }
    case Axiom::P2:
      return ix.size() == 2 && v.lhs == t(ix[0], ix[0]) && v.rhs == t(ix[0], ix[1]) && v.lhs > v.rhs;
    case Axiom::P3:
      return ix.size() == 2 && v.lhs == t(ix[0], ix[1]) && v.rhs == t(ix[1], ix[0]) && v.lhs != v.rhs;
    case Axiom::P4:
      return ix.size() == 3 && v.lhs == t(ix[0], ix[2]) + t(ix[1], ix[1]) &&
             v.rhs == t(ix[0], ix[1]) + t(ix[1], ix[2]) && v.lhs > v.rhs;
  }
  return false;
}

AxiomError::AxiomError(AxiomReport report)
    : std::runtime_error([&] {
        std::string msg = "partial metric axioms violated:";
        const std::size_t shown = std::min<std::size_t>(report.violations.size(), 5);
        for (std::size_t k = 0; k < shown; ++k) {
          msg += " ";
          msg += axiom_name(report.violations[k].axiom);
        }
        if (report.violations.size() > shown) msg += " ...";
        return msg;
      }()),
      report_(std::move(report)) {}

FinitePMetricSpace FinitePMetricSpace::validate(DistanceTable table, Exec exec) {
  auto report = check_axioms(table, exec);
  if (!report.passed()) throw AxiomError(std::move(report));
  return FinitePMetricSpace(std::move(table));
}

FinitePMetricSpace FinitePMetricSpace::from_rows(std::vector<std::string> labels,
                                                 const std::vector<std::vector<Rational>>& rows) {
  return validate(DistanceTable(std::move(labels), rows));
}

FinitePMetricSpace FinitePMetricSpace::restrict_to(const PointSet& points) const {
  if (points.empty()) throw PreconditionError("cannot restrict to an empty point set");
  std::vector<std::string> labels;
  std::vector<Rational> entries;
  for (auto i : points) {
    if (i >= size()) throw PreconditionError("restriction index out of range");
    labels.push_back(label(i));
    for (auto j : points) entries.push_back(table_(i, j));
  }
  // Subspaces of a pmetric space are pmetric spaces.
  return FinitePMetricSpace(DistanceTable(std::move(labels), std::move(entries)));
}

PointSet PointSet::of(std::vector<std::size_t> indices, std::size_t universe) {
  std::sort(indices.begin(), indices.end());
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
    throw MalformedInput("duplicate point in subset");
  }
  if (!indices.empty() && indices.back() >= universe) {
    throw MalformedInput("subset index out of range");
  }
  PointSet set;
  set.indices_ = std::move(indices);
  return set;
}

PointSet PointSet::all(std::size_t universe) {
  PointSet set;
  set.indices_.resize(universe);
  for (std::size_t i = 0; i < universe; ++i) set.indices_[i] = i;
  return set;
}

bool PointSet::contains(std::size_t i) const noexcept {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

bool PointSet::is_subset_of(const PointSet& other) const noexcept {
  return std::includes(other.indices_.begin(), other.indices_.end(), indices_.begin(),
                       indices_.end());
}

PointSet open_ball(const FinitePMetricSpace& space, std::size_t center, const Rational& epsilon) {
  if (!epsilon.is_positive()) throw InvalidRadius("radius must be positive, got " + epsilon.str());
  if (center >= space.size()) throw PreconditionError("ball centre out of range");
  const Rational bound = space.self(center) + epsilon;
  std::vector<std::size_t> members;
  for (std::size_t y = 0; y < space.size(); ++y) {
    if (space(center, y) < bound) members.push_back(y);
  }
  return PointSet::of(std::move(members), space.size());
}

namespace {

void check_subset(const FinitePMetricSpace& space, const PointSet& subset) {
  if (!subset.empty() && subset.indices().back() >= space.size()) {
    throw MalformedInput("subset index out of range");
  }
}

template <typename Approximates>
DensenessVerdict denseness(const FinitePMetricSpace& space, const PointSet& subset,
                           Approximates approximates) {
  check_subset(space, subset);
  DensenessVerdict verdict;
  verdict.witness.resize(space.size());
  for (std::size_t x = 0; x < space.size(); ++x) {
    for (auto y : subset) {
      if (approximates(x, y)) {
        verdict.witness[x] = y;
        break;
      }
    }
    if (!verdict.witness[x] && !verdict.counterexample) verdict.counterexample = x;
  }
  verdict.holds = !verdict.counterexample.has_value();
  return verdict;
}

}  // namespace

DensenessVerdict is_dense(const FinitePMetricSpace& space, const PointSet& subset) {
  return denseness(space, subset,
                   [&](std::size_t x, std::size_t y) { return space(x, y) == space.self(x); });
}

bool symmetric_denseness_by_collapse(const FinitePMetricSpace& space, const PointSet& subset) {
  check_subset(space, subset);
  return subset.size() == space.size();
}

DensenessVerdict is_symmetrically_dense(const FinitePMetricSpace& space, const PointSet& subset) {
  auto verdict = denseness(space, subset, [&](std::size_t x, std::size_t y) {
    return space(x, y) == space.self(x) && space(y, x) == space.self(y);
  });
  if (verdict.holds != symmetric_denseness_by_collapse(space, subset)) {
    throw std::logic_error("symmetric denseness criterion disagrees with the P1 collapse");
  }
  return verdict;
}

bool is_dense_at(const FinitePMetricSpace& space, const PointSet& subset, const Rational& epsilon) {
  for (std::size_t x = 0; x < space.size(); ++x) {
    const auto ball = open_ball(space, x, epsilon);
    const bool hit = std::any_of(subset.begin(), subset.end(),
                                 [&](std::size_t y) { return ball.contains(y); });
    if (!hit) return false;
  }
  return true;
}

bool is_symmetrically_dense_at(const FinitePMetricSpace& space, const PointSet& subset,
                               const Rational& epsilon) {
  for (std::size_t x = 0; x < space.size(); ++x) {
    const auto ball = open_ball(space, x, epsilon);
    const bool hit = std::any_of(subset.begin(), subset.end(), [&](std::size_t y) {
      return ball.contains(y) && open_ball(space, y, epsilon).contains(x);
    });
    if (!hit) return false;
  }
  return true;
}

}  // namespace pmetric
