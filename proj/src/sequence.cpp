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

#include "pmetric/sequence.hpp"

#include <algorithm>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pmetric/errors.hpp"

namespace pmetric {

EventuallyPeriodicSeq::EventuallyPeriodicSeq(std::vector<std::size_t> prefix,
                                             std::vector<std::size_t> cycle)
    : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
  if (cycle_.empty()) throw MalformedInput("sequence cycle must be nonempty");
}

std::size_t EventuallyPeriodicSeq::at(std::size_t n) const noexcept {
  if (n < prefix_.size()) return prefix_[n];
  return cycle_[(n - prefix_.size()) % cycle_.size()];
}

std::vector<std::size_t> EventuallyPeriodicSeq::support() const {
  std::vector<std::size_t> s = cycle_;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

void EventuallyPeriodicSeq::check_range(std::size_t n) const {
  auto bad = [n](std::size_t i) { return i >= n; };
  if (std::any_of(prefix_.begin(), prefix_.end(), bad) ||
      std::any_of(cycle_.begin(), cycle_.end(), bad)) {
    throw PreconditionError("sequence term is not a point of the space");
  }
}

namespace {

// Common value of f over the support, if constant.
template <typename F>
std::optional<Rational> constant_over(const std::vector<std::size_t>& support, F f) {
  std::optional<Rational> value;
  for (auto s : support) {
    Rational v = f(s);
    if (value && *value != v) return std::nullopt;
    value = std::move(v);
  }
  return value;
}

std::optional<Rational> double_limit_on(const FinitePMetricSpace& space,
                                        const std::vector<std::size_t>& support) {
  const Rational& c = space(support.front(), support.front());
  for (auto s : support) {
    for (auto t : support) {
      if (space(s, t) != c) return std::nullopt;
    }
  }
  return c;
}

SeqClassification classify_support(const FinitePMetricSpace& space,
                                   const std::vector<std::size_t>& support) {
  SeqClassification out;
  out.p_cauchy_limit = double_limit_on(space, support);
  out.p_cauchy = out.p_cauchy_limit.has_value();
  out.zero_cauchy = out.p_cauchy && out.p_cauchy_limit->is_zero();
  out.self_limit = constant_over(support, [&](std::size_t s) { return space.self(s); });

  std::vector<std::size_t> p_limits, zero_limits, top_limits;
  for (std::size_t x = 0; x < space.size(); ++x) {
    const bool top = std::all_of(support.begin(), support.end(),
                                 [&](std::size_t s) { return space(x, s) == space.self(x); });
    if (!top) continue;
    top_limits.push_back(x);
    // Given the top-limit condition, lim p(x, x_n) exists and equals p(x,x).
    if (out.self_limit && *out.self_limit == space.self(x)) {
      p_limits.push_back(x);
      if (space.self(x).is_zero()) zero_limits.push_back(x);
    }
  }
  out.p_limits = PointSet::of(std::move(p_limits), space.size());
  out.zero_limits = PointSet::of(std::move(zero_limits), space.size());
  out.top_limits = PointSet::of(std::move(top_limits), space.size());
  return out;
}

}  // namespace

std::optional<Rational> double_limit(const FinitePMetricSpace& space,
                                     const EventuallyPeriodicSeq& seq) {
  seq.check_range(space.size());
  return double_limit_on(space, seq.support());
}

SeqClassification classify(const FinitePMetricSpace& space, const EventuallyPeriodicSeq& seq) {
  seq.check_range(space.size());
  return classify_support(space, seq.support());
}

bool ImplicationReport::all_hold() const noexcept {
  return std::all_of(implications.begin(), implications.end(),
                     [](const Implication& i) { return i.holds; });
}

ImplicationReport check_implication_chain(const FinitePMetricSpace& space,
                                          const EventuallyPeriodicSeq& seq) {
  const auto c = classify(space, seq);
  ImplicationReport report;
  report.implications.push_back({"0-converges => p-converges", c.zero_converges(),
                                  c.p_converges(), c.zero_limits.is_subset_of(c.p_limits)});
  report.implications.push_back({"p-converges => converges", c.p_converges(), c.top_converges(),
                                 c.p_limits.is_subset_of(c.top_limits)});
  report.implications.push_back({"0-Cauchy => p-Cauchy", c.zero_cauchy, c.p_cauchy,
                                 !c.zero_cauchy || c.p_cauchy});
  const bool zero_cauchy_p_conv = c.zero_cauchy && c.p_converges();
  report.implications.push_back(
      {"0-Cauchy and p-converges => 0-converges", zero_cauchy_p_conv, c.zero_converges(),
       !c.zero_cauchy || c.p_limits.is_subset_of(c.zero_limits)});
  return report;
}

namespace {

struct CycleRange {
  std::size_t length;
  std::uint64_t count;
};

std::vector<std::size_t> decode_cycle(std::uint64_t index, std::size_t length, std::size_t n) {
  std::vector<std::size_t> cycle(length);
  for (std::size_t k = length; k-- > 0;) {
    cycle[k] = static_cast<std::size_t>(index % n);
    index /= n;
  }
  return cycle;
}

// Per-thread state. Memo per support mask: -1 unseen, 0 p-Cauchy and
// p-convergent, 1 p-Cauchy without a p-limit, 2 not p-Cauchy.
struct Worker {
  std::vector<signed char> memo;
  std::size_t sequences = 0;
  std::size_t p_cauchy = 0;
  std::size_t classified = 0;
  std::vector<std::pair<std::uint64_t, EventuallyPeriodicSeq>> counterexamples;
};

void visit(const FinitePMetricSpace& space, std::size_t length, std::uint64_t index,
           std::uint64_t order_key, Worker& w) {
  const std::size_t n = space.size();
  std::uint64_t mask = 0;
  std::uint64_t rest = index;
  for (std::size_t k = 0; k < length; ++k) {
    mask |= std::uint64_t{1} << (rest % n);
    rest /= n;
  }
  ++w.sequences;
  auto& state = w.memo[mask];
  if (state < 0) {
    EventuallyPeriodicSeq seq({}, decode_cycle(index, length, n));
    const auto c = classify_support(space, seq.support());
    ++w.classified;
    state = c.p_cauchy ? (c.p_converges() ? 0 : 1) : 2;
  }
  if (state == 2) return;
  ++w.p_cauchy;
  if (state == 1) {
    w.counterexamples.emplace_back(order_key, EventuallyPeriodicSeq({}, decode_cycle(index, length, n)));
  }
}

}  // namespace

CompletenessCertificate is_p_cauchy_complete_finite(const FinitePMetricSpace& space, Exec exec,
                                                    const CompletenessOptions& options) {
  const std::size_t n = space.size();
  const std::size_t max_cycle = options.max_cycle.value_or(n);
  if (max_cycle == 0) throw PreconditionError("cycle length bound must be positive");

  std::vector<CycleRange> ranges;
  std::uint64_t total = 0;
  std::uint64_t count = 1;
  for (std::size_t len = 1; len <= max_cycle; ++len) {
    if (count > options.budget / n) {
      throw BudgetExceeded("eventually periodic enumeration too large", options.budget + 1,
                           options.budget);
    }
    count *= n;
    total += count;
    if (total > options.budget) {
      throw BudgetExceeded("eventually periodic enumeration too large", total, options.budget);
    }
    ranges.push_back({len, count});
  }
  if (n > 24) throw BudgetExceeded("support-set memo too large", n, 24);

  CompletenessCertificate cert;
  cert.max_cycle_length = max_cycle;

  std::vector<Worker> workers(exec == Exec::serial ? 1 : static_cast<std::size_t>(max_threads()));
  for (auto& w : workers) w.memo.assign(std::size_t{1} << n, -1);

  std::uint64_t base = 0;
  for (const auto& range : ranges) {
    if (exec == Exec::serial) {
      for (std::uint64_t i = 0; i < range.count; ++i) visit(space, range.length, i, base + i, workers[0]);
    } else {
      const auto cnt = static_cast<std::int64_t>(range.count);
#pragma omp parallel for schedule(static)
      for (std::int64_t i = 0; i < cnt; ++i) {
#ifdef _OPENMP
        auto& w = workers[static_cast<std::size_t>(omp_get_thread_num())];
#else
        auto& w = workers[0];
#endif
        visit(space, range.length, static_cast<std::uint64_t>(i), base + static_cast<std::uint64_t>(i), w);
      }
    }
    base += range.count;
  }

  std::vector<std::pair<std::uint64_t, EventuallyPeriodicSeq>> found;
  std::vector<bool> seen_mask(std::size_t{1} << n, false);
  for (auto& w : workers) {
    cert.sequences_checked += w.sequences;
    cert.p_cauchy_sequences += w.p_cauchy;
    for (std::size_t m = 0; m < w.memo.size(); ++m) {
      if (w.memo[m] >= 0) seen_mask[m] = true;
    }
    std::move(w.counterexamples.begin(), w.counterexamples.end(), std::back_inserter(found));
  }
  cert.support_sets_classified =
      static_cast<std::size_t>(std::count(seen_mask.begin(), seen_mask.end(), true));
  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& f : found) cert.counterexamples.push_back(std::move(f.second));
  cert.complete = cert.counterexamples.empty();
  return cert;
}

namespace {

std::vector<std::size_t> parse_labels(const FinitePMetricSpace& space, const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  if (text.find_first_not_of(" \t") == std::string::npos) return out;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    auto token = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const auto first = token.find_first_not_of(" \t");
    const auto last = token.find_last_not_of(" \t");
    token = first == std::string::npos ? "" : token.substr(first, last - first + 1);
    const auto idx = space.index_of(token);
    if (!idx) throw MalformedInput("unknown point label '" + token + "'");
    out.push_back(*idx);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

EventuallyPeriodicSeq parse_sequence(const FinitePMetricSpace& space, const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos) return {{}, parse_labels(space, text)};
  if (text.find(';', semi + 1) != std::string::npos) {
    throw MalformedInput("sequence literal has more than one ';'");
  }
  return {parse_labels(space, text.substr(0, semi)), parse_labels(space, text.substr(semi + 1))};
}

std::string format_sequence(const FinitePMetricSpace& space, const EventuallyPeriodicSeq& seq) {
  auto join = [&](const std::vector<std::size_t>& xs) {
    std::string s;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      if (k) s += ',';
      s += space.label(xs[k]);
    }
    return s;
  };
  return join(seq.prefix()) + ";" + join(seq.cycle());
}

}  // namespace pmetric
