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
#include <string>
#include <vector>

#include "pmetric/exec.hpp"
#include "pmetric/space.hpp"

namespace pmetric {

/// x_n = prefix[n] for n < |prefix|, then the cycle repeats forever.
class EventuallyPeriodicSeq {
 public:
  /// Throws MalformedInput when the cycle is empty.
  EventuallyPeriodicSeq(std::vector<std::size_t> prefix, std::vector<std::size_t> cycle);

  static EventuallyPeriodicSeq constant(std::size_t point) { return {{}, {point}}; }

  [[nodiscard]] std::size_t at(std::size_t n) const noexcept;
  [[nodiscard]] const std::vector<std::size_t>& prefix() const noexcept { return prefix_; }
  [[nodiscard]] const std::vector<std::size_t>& cycle() const noexcept { return cycle_; }

  /// Distinct points of the cycle, sorted. Every tail limit depends on this set only.
  [[nodiscard]] std::vector<std::size_t> support() const;

  /// Throws PreconditionError if any term is not a point of an n-point space.
  void check_range(std::size_t n) const;

  friend bool operator==(const EventuallyPeriodicSeq&, const EventuallyPeriodicSeq&) = default;

 private:
  std::vector<std::size_t> prefix_;
  std::vector<std::size_t> cycle_;
};

struct SeqClassification {
  bool p_cauchy = false;
  std::optional<Rational> p_cauchy_limit;  // lim_{n,m} p(x_n, x_m)
  bool zero_cauchy = false;
  std::optional<Rational> self_limit;      // lim_n p(x_n, x_n)
  PointSet p_limits;
  PointSet zero_limits;
  PointSet top_limits;

  [[nodiscard]] bool p_converges() const noexcept { return !p_limits.empty(); }
  [[nodiscard]] bool zero_converges() const noexcept { return !zero_limits.empty(); }
  [[nodiscard]] bool top_converges() const noexcept { return !top_limits.empty(); }
};

/// c if p(s,t) = c for all s,t in the support (self-distances included), else none.
std::optional<Rational> double_limit(const FinitePMetricSpace& space,
                                     const EventuallyPeriodicSeq& seq);

/// Exact classification from the support set S of the cycle:
///   p-limits   x with p(x,s) = p(t,t) = p(x,x) for all s,t in S,
///   0-limits   p-limits whose common value is 0,
///   top-limits x with p(x,s) = p(x,x) for all s in S.
SeqClassification classify(const FinitePMetricSpace& space, const EventuallyPeriodicSeq& seq);

struct Implication {
  std::string name;
  bool antecedent = false;
  bool consequent = false;
  bool holds = false;
};

struct ImplicationReport {
  std::vector<Implication> implications;

  [[nodiscard]] bool all_hold() const noexcept;
};

/// Checks, for one sequence:
///   0-converges => p-converges => converges topologically,
///   0-Cauchy => p-Cauchy,
///   0-Cauchy and p-converges => 0-converges.
/// Convergence implications are checked pointwise on the limit sets.
ImplicationReport check_implication_chain(const FinitePMetricSpace& space,
                                          const EventuallyPeriodicSeq& seq);

struct CompletenessOptions {
  std::optional<std::size_t> max_cycle;  // defaults to the space size
  std::size_t budget = std::size_t{1} << 22;
};

struct CompletenessCertificate {
  bool complete = false;
  std::size_t max_cycle_length = 0;
  std::size_t sequences_checked = 0;
  std::size_t p_cauchy_sequences = 0;
  std::size_t support_sets_classified = 0;
  std::vector<EventuallyPeriodicSeq> counterexamples;  // p-Cauchy with no p-limit
};

/// Enumerates every cycle of length <= n over the points (prefixes do not
/// change any tail limit, so the empty prefix represents all of them) and
/// checks that every p-Cauchy one p-converges. Classification is memoised per
/// support set. Throws BudgetExceeded when the cycle count is over budget.
CompletenessCertificate is_p_cauchy_complete_finite(const FinitePMetricSpace& space,
                                                    Exec exec = Exec::parallel,
                                                    const CompletenessOptions& options = {});

/// Parses "prefix;cycle" with comma separated labels, e.g. "b;a".
EventuallyPeriodicSeq parse_sequence(const FinitePMetricSpace& space, const std::string& text);
std::string format_sequence(const FinitePMetricSpace& space, const EventuallyPeriodicSeq& seq);

}  // namespace pmetric
