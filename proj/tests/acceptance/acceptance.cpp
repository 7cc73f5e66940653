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

// Acceptance run: one PASS/FAIL line per criterion. Library results are
// compared against brute-force oracles written out below.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pmetric/completion.hpp"
#include "pmetric/extension.hpp"
#include "pmetric/fixtures.hpp"
#include "pmetric/isometry.hpp"
#include "pmetric/kahn.hpp"
#include "pmetric/search.hpp"
#include "pmetric/sequence.hpp"
#include "pmetric/space.hpp"

namespace {

using namespace pmetric;
using kahn::Alphabet;
using kahn::KahnPoint;
using kahn::KahnPrefixSeq;

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Check {
 public:
  void expect(bool condition, const std::string& what) {
    if (!condition && out_.ok) {
      out_.ok = false;
      out_.detail = what;
    }
  }
  Outcome done(const std::string& summary) {
    if (out_.ok) out_.detail = summary;
    return out_;
  }

 private:
  Outcome out_;
};

// ---- oracles ---------------------------------------------------------------

namespace oracle {

template <typename Matrix>
bool axioms(const Matrix& s) {
  const std::size_t n = s.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (s(x, y) != s(y, x) || s(x, x) > s(x, y)) return false;
      if (x != y && s(x, x) == s(x, y) && s(x, y) == s(y, y)) return false;
      for (std::size_t z = 0; z < n; ++z) {
        if (s(x, z) + s(y, y) > s(x, y) + s(y, z)) return false;
      }
    }
  }
  return true;
}

// A cycle with support S is p-Cauchy iff p is constant (= c) on S x S; it has
// a p-limit iff some x has p(x,x) = c and p(x,s) = c on S. Prefixes do not
// matter, so scanning the nonempty subsets decides completeness.
template <typename Matrix>
bool complete(const Matrix& s) {
  const std::size_t n = s.size();
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) support.push_back(i);
    }
    const Rational c = s(support[0], support[0]);
    bool cauchy = true;
    for (auto a : support) {
      for (auto b : support) cauchy = cauchy && s(a, b) == c;
    }
    if (!cauchy) continue;
    bool limit = false;
    for (std::size_t x = 0; x < n && !limit; ++x) {
      bool all = s(x, x) == c;
      for (auto a : support) all = all && s(x, a) == c;
      limit = all;
    }
    if (!limit) return false;
  }
  return true;
}

bool isometric(const FinitePMetricSpace& a, const FinitePMetricSpace& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::size_t> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool same = true;
    for (std::size_t i = 0; i < a.size() && same; ++i) {
      for (std::size_t j = 0; j < a.size() && same; ++j) same = a(i, j) == b(perm[i], perm[j]);
    }
    if (same) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// In a finite space B_eps(x) shrinks to {y : p(x,y) = p(x,x)} for small eps.
bool dense(const FinitePMetricSpace& s, const std::vector<std::size_t>& subset) {
  for (std::size_t x = 0; x < s.size(); ++x) {
    bool hit = false;
    for (auto y : subset) hit = hit || s(x, y) == s(x, x);
    if (!hit) return false;
  }
  return true;
}

template <typename Matrix>
bool symmetrically_dense(const Matrix& s, const std::vector<std::size_t>& subset) {
  for (std::size_t x = 0; x < s.size(); ++x) {
    bool hit = false;
    for (auto y : subset) hit = hit || (s(x, y) == s(x, x) && s(y, x) == s(y, y));
    if (!hit) return false;
  }
  return true;
}

std::vector<std::size_t> range(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

Rational two_pow_neg(std::size_t k) { return Rational(1, std::int64_t{1} << k); }

std::size_t lcp(const std::string& a, const std::string& b) {
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
  return k;
}

std::string unlabel(const std::string& label) { return label == "ε" ? std::string() : label; }

// Double limit of an eventually periodic sequence: constant on the support.
std::optional<Rational> self_limit(const FinitePMetricSpace& s, const EventuallyPeriodicSeq& q) {
  const auto& c = q.cycle();
  for (auto a : c) {
    for (auto b : c) {
      if (s(a, b) != s(c[0], c[0])) return std::nullopt;
    }
  }
  return s(c[0], c[0]);
}

// lim p(a_n, b_n): the pair sequence is periodic after both prefixes.
std::optional<Rational> cross(const FinitePMetricSpace& s, const EventuallyPeriodicSeq& a,
                              const EventuallyPeriodicSeq& b) {
  const std::size_t start = std::max(a.prefix().size(), b.prefix().size());
  const std::size_t period = std::lcm(a.cycle().size(), b.cycle().size());
  const Rational first = s(a.at(start), b.at(start));
  for (std::size_t n = start; n < start + period; ++n) {
    if (s(a.at(n), b.at(n)) != first) return std::nullopt;
  }
  return first;
}

bool equivalent(const FinitePMetricSpace& s, const EventuallyPeriodicSeq& a, const EventuallyPeriodicSeq& b) {
  const auto sa = self_limit(s, a);
  const auto sb = self_limit(s, b);
  const auto c = cross(s, a, b);
  return sa && sb && c && *sa == *sb && *c == *sa;
}

}  // namespace oracle

std::vector<FinitePMetricSpace> corpus(std::size_t max_n) {
  std::vector<FinitePMetricSpace> out;
  for (std::uint64_t seed = 0; seed < kCorpusSize; ++seed) {
    auto s = corpus_space(seed);
    if (s.size() <= max_n) out.push_back(std::move(s));
  }
  return out;
}

FinitePMetricSpace x1() { return FinitePMetricSpace::from_rows({"a"}, {{0}}); }
FinitePMetricSpace y2() { return FinitePMetricSpace::from_rows({"a", "b"}, {{0, 1}, {1, 1}}); }

// ---- criteria --------------------------------------------------------------

Outcome two_completions() {
  Check c;
  const auto ex = build_two_point_example();
  c.expect(ex.one_point == x1() && ex.two_point == y2(), "fixture matrices differ");
  c.expect(oracle::axioms(ex.one_point) && oracle::axioms(ex.two_point), "axioms");
  c.expect(check_axioms(ex.one_point.table()).passed() && check_axioms(ex.two_point.table()).passed(),
           "library axiom check");
  for (const auto* s : {&ex.one_point, &ex.two_point}) {
    const auto cert = is_p_cauchy_complete_finite(*s);
    c.expect(cert.complete && oracle::complete(*s), "completeness of " + std::to_string(s->size()) + "-point space");
  }
  c.expect(ex.inclusion.mapping == std::vector<std::size_t>{0}, "inclusion is not a -> a");
  c.expect(ex.two_point(0, 0) == ex.one_point(0, 0), "a -> a is not isometric");
  c.expect(is_isometry(ex.one_point, ex.two_point, ex.inclusion), "library isometry check");
  c.expect(oracle::dense(ex.two_point, {0}), "image not dense");
  c.expect(is_dense(ex.two_point, PointSet::of({0}, 2)).holds, "library denseness");
  c.expect(!oracle::isometric(ex.one_point, ex.two_point), "bijective isometry exists");
  c.expect(!find_isometry(ex.one_point, ex.two_point, IsometryMode::bijection), "library found a bijection");
  const auto fixtures = run_fixtures(Exec::parallel, "two-completions");
  const bool fixture = fixtures.size() == 1 && fixtures[0].passed;
  c.expect(fixture, "repro fixture two-completions failed");
  return c.done("X1 and Y2 complete, a->a dense, no bijection");
}

Outcome not_symmetrically_dense() {
  Check c;
  const auto y = y2();
  const auto v = is_symmetrically_dense(y, PointSet::of({0}, 2));
  c.expect(!v.holds, "reported symmetrically dense");
  c.expect(v.counterexample == std::size_t{1}, "counterwitness is not b");
  c.expect(!oracle::symmetrically_dense(y, {0}), "oracle disagrees");
  const Rational half(1, 2);
  c.expect(!(y(0, 1) < y(0, 0) + half), "b in B_1/2(a) by the definition");
  c.expect(!open_ball(y, 0, half).contains(1), "b in the library ball");
  return c.done("counterwitness b, p(a,b) = 1 >= 1/2");
}

Outcome extension_corpus() {
  Check c;
  std::size_t spaces = 0;
  std::size_t extensions = 0;
  for (std::uint64_t seed = 0; seed < kCorpusSize; ++seed) {
    const auto s = corpus_space(seed);
    ++spaces;
    for (std::size_t base = 0; base < s.size(); ++base) {
      const auto ext = attach_asymmetric_point(s, base);
      const auto& e = ext.space;
      const auto tag = "seed " + std::to_string(seed) + " base " + std::to_string(base);
      c.expect(e.size() == s.size() + 1 && ext.new_point == s.size(), tag + ": size");
      c.expect(oracle::axioms(e), tag + ": axioms");
      c.expect(check_axioms(e.table()).passed(), tag + ": library axioms");
      bool restricts = true;
      for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = 0; j < s.size(); ++j) restricts = restricts && e(i, j) == s(i, j);
      }
      c.expect(restricts, tag + ": restriction");
      const auto old = oracle::range(s.size());
      c.expect(oracle::dense(e, old), tag + ": not dense");
      c.expect(!oracle::symmetrically_dense(e, old), tag + ": symmetrically dense");
      ++extensions;
    }
  }
  c.expect(spaces >= 500, "corpus too small");
  return c.done(std::to_string(spaces) + " spaces, " + std::to_string(extensions) + " extensions");
}

Outcome completion_certificates() {
  Check c;
  std::size_t certified = 0;
  for (const auto& s : corpus(5)) {
    for (std::size_t base = 0; base < s.size(); ++base) {
      const auto ac = asymmetric_completion_finite(s, base);
      c.expect(ac.certificate.complete, "certificate incomplete");
      c.expect(ac.certificate.max_cycle_length >= ac.extension.space.size(), "cycle bound below size");
      c.expect(oracle::complete(ac.extension.space), "oracle finds an incomplete extension");
      ++certified;
    }
  }
  return c.done(std::to_string(certified) + " extensions certified");
}

Outcome completion_classification() {
  Check c;
  const std::vector<Rational> bits{Rational(0), Rational(1)};
  const auto all = classify_completions(x1(), 1, bits);
  c.expect(all.size() >= 2, "fewer than two completions");
  bool has_x1 = false;
  bool has_y2 = false;
  for (std::size_t i = 0; i < all.size(); ++i) {
    c.expect(oracle::axioms(all[i]) && oracle::complete(all[i]), "invalid completion");
    c.expect(oracle::dense(all[i], {0}), "base not dense");
    has_x1 = has_x1 || oracle::isometric(all[i], x1());
    has_y2 = has_y2 || oracle::isometric(all[i], y2());
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      c.expect(!oracle::isometric(all[i], all[j]), "isometric duplicates");
    }
  }
  c.expect(has_x1 && has_y2, "X1 or Y2 missing");
  const auto r = search_counterexample(SearchProperty::single_completion_only,
                                       {2, {Rational(0), Rational(1), Rational(2)}, 1});
  c.expect(r.status == SearchStatus::exhausted_no_witness, "single completion witness found");
  return c.done(std::to_string(all.size()) + " completions of X1; singleCompletionOnly exhausted over " +
                std::to_string(r.states_explored) + " spaces");
}

Outcome kahn_domain() {
  Check c;
  for (const char* sigma : {"0", "01", "012"}) {
    for (std::size_t d = 0; d <= 6; ++d) {
      const auto t = kahn::truncate(Alphabet(sigma), d);
      c.expect(check_axioms(t.table()).passed(), std::string("truncation axioms ") + sigma);
      std::size_t expected = 0;
      for (std::size_t k = 0, w = 1; k <= d; ++k, w *= std::string(sigma).size()) expected += w;
      c.expect(t.size() == expected, "truncation size");
      for (std::size_t i = 0; i < t.size(); ++i) {
        const auto a = oracle::unlabel(t.label(i));
        for (std::size_t j = 0; j < t.size(); ++j) {
          const auto b = oracle::unlabel(t.label(j));
          if (t(i, j) != oracle::two_pow_neg(oracle::lcp(a, b))) {
            c.expect(false, "truncation entry " + a + "," + b);
          }
        }
      }
    }
  }
  const Alphabet bits("01");
  const auto streams = sample_streams();
  c.expect(streams.size() == 20, "sample size");
  for (const auto& x : streams) {
    for (std::size_t k = 0; k <= 10; ++k) {
      const auto eps = oracle::two_pow_neg(k);
      const auto w = kahn::density_witness(bits, kahn::Subset::words_minus_empty, x, eps);
      c.expect(w.dense && w.symmetric && w.word.has_value(), "no witness for " + x.describe());
      if (!w.word) continue;
      // p(x,w) = 2^-|w| when w is a prefix of x; p(x,x) = 0 and p(w,w) = 2^-|w|.
      c.expect(!w.word->empty() && x.prefix(w.word->size()) == *w.word, "witness is not a prefix");
      c.expect(oracle::two_pow_neg(w.word->size()) < eps, "witness outside the ball");
    }
  }
  const auto eps_point = KahnPoint::word("");
  const auto asym = kahn::density_witness(bits, kahn::Subset::words_minus_empty, eps_point, Rational(1, 2), 10);
  c.expect(!asym.symmetric && asym.asymmetry.has_value(), "no asymmetry certificate");
  if (asym.asymmetry) {
    c.expect(asym.asymmetry->verified_up_to_length == 10, "certificate depth");
    c.expect(asym.asymmetry->words_checked == 2046, "certificate word count");
  }
  std::size_t checked = 0;
  for (const auto& y : kahn::words_up_to(bits, 10, 1)) {
    const auto to_eps = kahn::kahn_distance(KahnPoint::word(y), eps_point);
    const auto own = oracle::two_pow_neg(oracle::lcp(y, ""));
    c.expect(to_eps == Rational(1) && own == Rational(1), "p(y, eps) != 1");
    c.expect(own >= oracle::two_pow_neg(y.size()) + Rational(1, 2), "asymmetry gap");
    ++checked;
  }
  c.expect(checked == 2046, "own word count");
  const auto inc = kahn::kahn_incompleteness_witness(bits, 10);
  c.expect(inc.no_word_limit && inc.double_limit.is_zero(), "incompleteness witness");
  for (std::size_t n = 0; n < 8; ++n) {
    for (std::size_t m = 0; m < 8; ++m) {
      const auto a = inc.sequence.term(n);
      const auto b = inc.sequence.term(m);
      c.expect(a.find_first_not_of('0') == std::string::npos, "term is not 0^k");
      c.expect(kahn::kahn_distance(KahnPoint::word(a), KahnPoint::word(b)) ==
                   oracle::two_pow_neg(std::min(a.size(), b.size())),
               "term distance");
    }
  }
  // A word limit u would need p(u,u) = 0, but every word has p(u,u) = 2^-|u| > 0.
  for (const auto& u : kahn::words_up_to(bits, 10)) {
    c.expect(kahn::kahn_distance(KahnPoint::word(u), KahnPoint::word(u)).is_positive(), "word with self 0");
  }
  return c.done("truncations |S|<=3 d<=6, 20 streams x 11 radii, 2046 words asymmetric, no word limit");
}

Outcome quotient_claims() {
  Check c;
  std::mt19937_64 rng(2024);
  std::size_t triples = 0;
  std::size_t transitive_premises = 0;
  std::size_t classes = 0;
  std::size_t alternates = 0;
  std::size_t fragments = 0;
  std::size_t witnesses = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto s = corpus_space(seed);
    if (s.size() > 4) continue;
    const auto presented = PresentedSpace::finite(s);

    // All p-Cauchy models with prefix length <= 1 and cycle length <= 2.
    std::vector<EventuallyPeriodicSeq> seqs;
    std::vector<std::vector<std::size_t>> prefixes{{}};
    for (std::size_t p = 0; p < s.size(); ++p) prefixes.push_back({p});
    std::vector<std::vector<std::size_t>> cycles;
    for (std::size_t a = 0; a < s.size(); ++a) {
      cycles.push_back({a});
      for (std::size_t b = 0; b < s.size(); ++b) {
        if (a != b) cycles.push_back({a, b});
      }
    }
    for (const auto& pre : prefixes) {
      for (const auto& cyc : cycles) {
        EventuallyPeriodicSeq q(pre, cyc);
        if (oracle::self_limit(s, q)) seqs.push_back(q);
      }
    }
    std::vector<CauchySeqModel> models;
    for (const auto& q : seqs) models.push_back(CauchySeqModel::make(presented, q));

    for (int t = 0; t < 8; ++t) {
      const std::size_t i = rng() % models.size();
      // Bias b and c toward the class of a so the transitivity premise occurs.
      auto pick_related = [&](std::size_t from) {
        std::vector<std::size_t> same;
        for (std::size_t k = 0; k < models.size(); ++k) {
          if (oracle::equivalent(s, seqs[from], seqs[k])) same.push_back(k);
        }
        return rng() % 2 ? same[rng() % same.size()] : rng() % models.size();
      };
      const std::size_t j = pick_related(i);
      const std::size_t k = pick_related(j);
      auto eq = [&](std::size_t x, std::size_t y) {
        const bool lib = seq_equivalent(presented, models[x], models[y]).equivalent;
        c.expect(lib == oracle::equivalent(s, seqs[x], seqs[y]), "equivalence disagrees with the oracle");
        return lib;
      };
      c.expect(eq(i, i) && eq(j, j) && eq(k, k), "reflexivity");
      c.expect(eq(i, j) == eq(j, i) && eq(j, k) == eq(k, j), "symmetry");
      if (eq(i, j) && eq(j, k)) {
        ++transitive_premises;
        c.expect(eq(i, k), "transitivity");
      }
      ++triples;
    }

    auto completion = complete(presented);
    std::vector<CompletionSpace::ClassId> ids(completion.size());
    std::iota(ids.begin(), ids.end(), 0);
    c.expect(oracle::axioms(completion.fragment(ids)), "fragment axioms");
    ++fragments;
    for (auto id : ids) {
      const auto rep = completion.at(id).representative.finite_seq();
      std::vector<EventuallyPeriodicSeq> alts;
      for (std::size_t p = 0; p < s.size(); ++p) {
        auto pre = rep.prefix();
        pre.insert(pre.begin(), p);
        alts.emplace_back(pre, rep.cycle());
      }
      auto doubled = rep.cycle();
      doubled.insert(doubled.end(), rep.cycle().begin(), rep.cycle().end());
      alts.emplace_back(rep.prefix(), doubled);
      auto rotated = rep.cycle();
      std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
      auto pre2 = rep.prefix();
      pre2.push_back(rep.cycle()[0]);
      alts.emplace_back(pre2, rotated);
      c.expect(alts.size() >= 3, "fewer than three alternates");
      for (const auto& alt : alts) {
        const auto m = CauchySeqModel::make(presented, alt);
        c.expect(completion.class_of(m) == id, "alternate lands in another class");
        for (auto other : ids) {
          const auto lim = cross_limit(presented, m, completion.at(other).representative);
          c.expect(lim && *lim == completion.distance(id, other), "distance depends on the representative");
        }
        ++alternates;
      }
      ++classes;
      for (std::size_t e = 0; e <= 10; ++e) {
        const auto eps = oracle::two_pow_neg(e);
        const auto w = completion.symmetric_base_witness(id, eps);
        c.expect(w && completion.at(*w).base, "no base witness");
        if (!w) continue;
        c.expect(completion.distance(*w, id) < completion.distance(*w, *w) + eps &&
                     completion.distance(id, *w) < completion.distance(id, id) + eps,
                 "witness outside the symmetric ball");
        ++witnesses;
      }
    }
  }

  // Kahn words without the empty word: stream classes and base words.
  auto kahn_completion = complete(PresentedSpace::kahn_finite_words(Alphabet("01"), true));
  std::vector<CompletionSpace::ClassId> kids;
  for (const auto& x : sample_streams()) {
    kids.push_back(kahn_completion.class_of(
        CauchySeqModel::make(kahn_completion.presented(), KahnPrefixSeq{x, 1, 1})));
  }
  for (const char* w : {"0", "1", "01", "0110", "111"}) kids.push_back(kahn_completion.embed_word(w));
  c.expect(oracle::axioms(kahn_completion.fragment(kids)), "Kahn fragment axioms");
  ++fragments;
  for (auto id : kids) {
    for (std::size_t e = 0; e <= 10; ++e) {
      const auto eps = oracle::two_pow_neg(e);
      const auto w = kahn_completion.symmetric_base_witness(id, eps);
      c.expect(w && kahn_completion.at(*w).base, "no Kahn base witness");
      if (!w) continue;
      c.expect(kahn_completion.distance(*w, id) < kahn_completion.distance(*w, *w) + eps &&
                   kahn_completion.distance(id, *w) < kahn_completion.distance(id, id) + eps,
               "Kahn witness outside the symmetric ball");
      ++witnesses;
    }
  }
  c.expect(triples >= 100, "fewer than 100 triples");
  c.expect(transitive_premises > 0, "transitivity never exercised");
  return c.done(std::to_string(triples) + " triples (" + std::to_string(transitive_premises) +
                " transitive), " + std::to_string(alternates) + " alternates over " + std::to_string(classes) +
                " classes, " + std::to_string(fragments) + " fragments, " + std::to_string(witnesses) +
                " base witnesses");
}

Outcome finite_collapse() {
  Check c;
  std::size_t checked = 0;
  for (const auto& s : corpus(5)) {
    const auto fc = finite_completion(complete(PresentedSpace::finite(s)));
    c.expect(oracle::isometric(fc, s), "completion not isometric to the base");
    const auto w = find_isometry(fc, s, IsometryMode::bijection);
    c.expect(w && is_isometry(fc, s, *w), "find_isometry found no bijection");
    ++checked;
  }
  return c.done(std::to_string(checked) + " spaces collapse");
}

Outcome no_isometric_extension() {
  Check c;
  const IsometryWitness id{IsometryMode::embedding, {0}};
  const auto r = refute_isometric_extension(x1(), id, y2(), 1, x1(), 10);
  c.expect(r.status == RefutationStatus::global_obstruction, "finite instance not refuted globally");
  c.expect(r.required_self_distance == Rational(1), "required self-distance");
  // Oracle: X1 attains only p(a,a) = 0.
  c.expect(x1()(0, 0) != y2()(1, 1), "oracle: target attains the self-distance");

  const auto k = refute_isometric_extension_kahn(Alphabet("01"), KahnPoint::word(""), true, 10);
  c.expect(k.status == RefutationStatus::global_obstruction, "Kahn instance not refuted globally");
  c.expect(k.required_self_distance == Rational(1), "Kahn required self-distance");
  // Oracle: without the empty word, self-distances are 0 or 2^-k with k >= 1.
  for (const auto& w : kahn::words_up_to(Alphabet("01"), 10, 1)) {
    c.expect(oracle::two_pow_neg(w.size()) != Rational(1), "oracle: a nonempty word has self 1");
  }

  const auto control = refute_isometric_extension(x1(), id, y2(), 1, y2(), 10);
  c.expect(control.status == RefutationStatus::candidate_found && !control.refuted(), "control refuted");
  c.expect(control.candidate == std::string("b"), "control candidate");
  return c.done("X1/Y2 and Kahn eps global obstructions; control finds b");
}

Outcome impossibility_sweeps() {
  Check c;
  const std::vector<Rational> grid{Rational(0), Rational(1, 2), Rational(1)};
  const SearchBounds bounds{3, grid, 1};
  const auto sym = search_counterexample(SearchProperty::proper_symmetrically_dense_subset, bounds);
  const auto inc = search_counterexample(SearchProperty::p_cauchy_incomplete_finite, bounds);
  c.expect(sym.status == SearchStatus::exhausted_no_witness, "symmetric denseness witness found");
  c.expect(inc.status == SearchStatus::exhausted_no_witness, "incomplete witness found");

  // Oracle sweep over every symmetric assignment.
  std::size_t valid = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::size_t m = n * (n + 1) / 2;
    std::size_t total = 1;
    for (std::size_t i = 0; i < m; ++i) total *= grid.size();
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
      std::size_t rest = idx;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
          rows[i][j] = rows[j][i] = grid[rest % grid.size()];
          rest /= grid.size();
        }
      }
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < n; ++i) labels.push_back(point_label(i));
      const DistanceTable s(labels, rows);
      if (!oracle::axioms(s)) continue;
      ++valid;
      c.expect(oracle::complete(s), "oracle: incomplete space");
      for (std::uint32_t mask = 1; mask + 1 < (1U << n); ++mask) {
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i < n; ++i) {
          if (mask >> i & 1U) subset.push_back(i);
        }
        c.expect(!oracle::symmetrically_dense(s, subset), "oracle: proper symmetrically dense subset");
      }
    }
  }
  std::size_t library = 0;
  for (std::size_t n = 1; n <= 3; ++n) library += enumerate_pmetrics(n, grid).size();
  c.expect(library == valid, "enumeration count differs from the oracle");
  return c.done(std::to_string(valid) + " spaces swept, both properties exhausted");
}

Outcome zero_completions() {
  Check c;
  std::size_t finite = 0;
  for (std::uint64_t seed = 0; seed < kCorpusSize; ++seed) {
    const auto s = corpus_space(seed);
    auto z = zero_completion(PresentedSpace::finite(s));
    const auto members = z.members();
    c.expect(members.size() == s.size(), "0-completion adds classes");
    for (std::size_t i = 0; i < s.size(); ++i) {
      c.expect(std::find(members.begin(), members.end(), z.completion().embed(i)) != members.end(),
               "base point missing");
    }
    c.expect(oracle::isometric(z.completion().fragment(members), s), "0-completion not isometric to base");
    ++finite;
  }

  auto z = zero_completion(PresentedSpace::kahn_finite_words(Alphabet("01"), true));
  auto& comp = z.completion();
  const auto& presented = comp.presented();
  const auto stream_class = comp.class_of(CauchySeqModel::make(presented, KahnPrefixSeq{sample_streams()[4], 1, 1}));
  c.expect(z.contains(stream_class), "stream class rejected");
  c.expect(comp.distance(stream_class, stream_class).is_zero(), "stream self-distance");
  c.expect(z.accepts(CauchySeqModel::constant_word(presented, "0110")), "word rejected");
  // A class of positive self-distance that is not a base word stays out.
  for (std::size_t e = 0; e <= 10; ++e) {
    const auto eps = oracle::two_pow_neg(e);
    const auto w = comp.symmetric_base_witness(stream_class, eps);
    c.expect(w && comp.at(*w).base && z.contains(*w), "no symmetric base witness");
    if (w) {
      c.expect(comp.distance(*w, stream_class) < comp.distance(*w, *w) + eps &&
                   comp.distance(stream_class, *w) < eps,
               "base witness outside the symmetric ball");
    }
  }
  const auto streams = sample_streams();
  std::size_t limits = 0;
  for (std::size_t i = 0; i < 10; ++i) {
    const KahnPrefixSeq seq{streams[i * 2], 1 + i % 3, 1 + i % 2};
    const auto model = CauchySeqModel::make(presented, seq);
    c.expect(model.double_limit().is_zero(), "sampled sequence not 0-Cauchy");
    const auto limit = z.zero_limit(model);
    c.expect(limit && z.contains(*limit), "no 0-limit in the 0-completion");
    if (!limit) continue;
    c.expect(comp.distance(*limit, *limit).is_zero(), "limit self-distance");
    for (std::size_t n = 0; n < 20; ++n) {
      const auto term = seq.term(n);
      const auto d = comp.distance(*limit, comp.embed_word(term));
      c.expect(d == oracle::two_pow_neg(term.size()), "p(limit, x_n) != 2^-|x_n|");
    }
    ++limits;
  }
  return c.done(std::to_string(finite) + " finite spaces collapse; Kahn stream and word accepted, " +
                std::to_string(limits) + " sampled 0-limits");
}

struct Criterion {
  const char* name;
  double limit_seconds;  // 0: no time limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"two-p-cauchy-completions", 1, two_completions},
      {"not-symmetrically-dense", 1, not_symmetrically_dense},
      {"asymmetric-extension-corpus", 30, extension_corpus},
      {"asymmetric-completion-certified", 0, completion_certificates},
      {"completion-classification", 0, completion_classification},
      {"kahn-domain", 10, kahn_domain},
      {"quotient-construction", 0, quotient_claims},
      {"finite-collapse", 0, finite_collapse},
      {"no-isometric-extension", 0, no_isometric_extension},
      {"impossibility-sweeps", 60, impossibility_sweeps},
      {"zero-completion", 0, zero_completions},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& cr = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && cr.limit_seconds > 0 && secs >= cr.limit_seconds) {
      o = {false, "over the time limit: " + o.detail};
    }
    failures += !o.ok;
    char timing[64];
    if (cr.limit_seconds > 0) {
      std::snprintf(timing, sizeof timing, "%.3fs < %.0fs", secs, cr.limit_seconds);
    } else {
      std::snprintf(timing, sizeof timing, "%.3fs", secs);
    }
    std::printf("%s %2zu %-32s %-16s %s\n", o.ok ? "PASS" : "FAIL", i + 1, cr.name, timing, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
