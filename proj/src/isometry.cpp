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

#include "pmetric/isometry.hpp"

#include <algorithm>

#include "pmetric/errors.hpp"

namespace pmetric {

std::string_view mode_name(IsometryMode mode) noexcept {
  return mode == IsometryMode::bijection ? "bijection" : "embedding";
}

bool is_isometry(const FinitePMetricSpace& source, const FinitePMetricSpace& target,
                 const IsometryWitness& w) {
  const std::size_t n = source.size();
  if (w.mapping.size() != n) return false;
  if (w.mode == IsometryMode::bijection && target.size() != n) return false;
  std::vector<bool> used(target.size(), false);
  for (auto t : w.mapping) {
    if (t >= target.size() || used[t]) return false;
    used[t] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (source(i, j) != target(w.mapping[i], w.mapping[j])) return false;
    }
  }
  return true;
}

namespace {

std::vector<Rational> sorted_selves(const FinitePMetricSpace& s) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < s.size(); ++i) out.push_back(s.self(i));
  std::sort(out.begin(), out.end());
  return out;
}

class Search {
 public:
  Search(const FinitePMetricSpace& source, const FinitePMetricSpace& target)
      : source_(source), target_(target), used_(target.size(), false) {}

  bool run(std::size_t i) {
    if (i == source_.size()) return true;
    for (std::size_t t = 0; t < target_.size(); ++t) {
      if (used_[t] || target_.self(t) != source_.self(i)) continue;
      if (!consistent(i, t)) continue;
      used_[t] = true;
      mapping_.push_back(t);
      if (run(i + 1)) return true;
      mapping_.pop_back();
      used_[t] = false;
    }
    return false;
  }

  std::vector<std::size_t> take() { return std::move(mapping_); }

 private:
  bool consistent(std::size_t i, std::size_t t) const {
    for (std::size_t k = 0; k < i; ++k) {
      if (source_(i, k) != target_(t, mapping_[k]) || source_(k, i) != target_(mapping_[k], t)) {
        return false;
      }
    }
    return true;
  }

  const FinitePMetricSpace& source_;
  const FinitePMetricSpace& target_;
  std::vector<bool> used_;
  std::vector<std::size_t> mapping_;
};

}  // namespace

std::optional<IsometryWitness> find_isometry(const FinitePMetricSpace& source,
                                             const FinitePMetricSpace& target, IsometryMode mode) {
  const auto src = sorted_selves(source);
  const auto dst = sorted_selves(target);
  if (mode == IsometryMode::bijection) {
    if (src != dst) return std::nullopt;
  } else {
    if (src.size() > dst.size()) return std::nullopt;
    if (!std::includes(dst.begin(), dst.end(), src.begin(), src.end())) return std::nullopt;
  }
  Search search(source, target);
  if (!search.run(0)) return std::nullopt;
  return IsometryWitness{mode, search.take()};
}

IsometryWitness inverse(const IsometryWitness& w) {
  if (w.mode != IsometryMode::bijection) {
    throw PreconditionError("only bijective isometries have inverses");
  }
  IsometryWitness out{IsometryMode::bijection, std::vector<std::size_t>(w.mapping.size())};
  for (std::size_t i = 0; i < w.mapping.size(); ++i) {
    if (w.mapping[i] >= w.mapping.size()) throw PreconditionError("witness index out of range");
    out.mapping[w.mapping[i]] = i;
  }
  return out;
}

}  // namespace pmetric
