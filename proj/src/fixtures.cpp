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

#include "pmetric/fixtures.hpp"

#include <chrono>
#include <functional>
#include <stdexcept>

#include "pmetric/completion.hpp"
#include "pmetric/extension.hpp"
#include "pmetric/isometry.hpp"
#include "pmetric/sequence.hpp"

namespace pmetric {

using kahn::Alphabet;
using kahn::KahnPoint;
using kahn::Stream;

GeneratorParams corpus_params(std::uint64_t seed) {
  GeneratorParams p;
  p.n = 1 + seed % 6;
  p.seed = seed;
  return p;
}

FinitePMetricSpace corpus_space(std::uint64_t seed) { return random_pmetric(corpus_params(seed)); }

std::vector<KahnPoint> sample_streams() {
  std::vector<KahnPoint> out;
  for (const char* w : {"0", "1", "01", "10", "001", "011", "0110", "00010", "1101", "0111"}) {
    out.push_back(KahnPoint::stream(Stream::repeat(w)));
  }
  const std::pair<const char*, const char*> periodic[] = {
      {"1", "0"}, {"0", "1"}, {"11", "01"}, {"101", "0011"}, {"0000", "1"},
      {"010", "110"}, {"1", "001"}};
  for (const auto& [head, cycle] : periodic) {
    out.push_back(KahnPoint::stream(Stream::periodic(head, cycle)));
  }
  for (auto id : Stream::programs()) out.push_back(KahnPoint::stream(Stream::program(id)));
  return out;
}

namespace {

void require(bool condition, const std::string& what) {
  if (!condition) throw std::runtime_error(what);
}

PointSet first_points(std::size_t n, std::size_t universe) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return PointSet::of(std::move(v), universe);
}

std::string two_completions(Exec exec) {
  const auto ex = build_two_point_example();
  require(check_axioms(ex.one_point.table(), exec).passed(), "X1 fails the axioms");
  require(check_axioms(ex.two_point.table(), exec).passed(), "Y2 fails the axioms");
  require(is_p_cauchy_complete_finite(ex.one_point, exec).complete, "X1 not complete");
  require(is_p_cauchy_complete_finite(ex.two_point, exec).complete, "Y2 not complete");
  require(is_isometry(ex.one_point, ex.two_point, ex.inclusion), "a -> a is not isometric");
  require(is_dense(ex.two_point, PointSet::of({0}, 2)).holds, "{a} not dense in Y2");
  require(!find_isometry(ex.one_point, ex.two_point, IsometryMode::bijection),
          "X1 and Y2 are isometric");
  return "X1 and Y2 are non-isometric completions of X1";
}

std::string asymmetric_ball() {
  const auto y2 = build_two_point_example().two_point;
  const auto v = is_symmetrically_dense(y2, PointSet::of({0}, 2));
  require(!v.holds && v.counterexample == std::size_t{1}, "b is not the counterwitness");
  require(!open_ball(y2, 0, Rational(1, 2)).contains(1), "b lies in B_1/2(a)");
  return "{a} is dense but not symmetrically dense in Y2; counterwitness b";
}

std::string extension_corpus(Exec exec) {
  std::size_t runs = 0;
  for (std::uint64_t seed = 0; seed < kCorpusSize; ++seed) {
    const auto s = corpus_space(seed);
    for (std::size_t base = 0; base < s.size(); ++base) {
      const auto ext = attach_asymmetric_point(s, base);
      const auto olds = first_points(s.size(), ext.space.size());
      require(check_axioms(ext.space.table(), exec).passed(), "axioms fail at seed " + std::to_string(seed));
      require(ext.space.restrict_to(olds) == s, "restriction differs at seed " + std::to_string(seed));
      require(is_dense(ext.space, olds).holds, "not dense at seed " + std::to_string(seed));
      require(!is_symmetrically_dense(ext.space, olds).holds,
              "symmetrically dense at seed " + std::to_string(seed));
      ++runs;
    }
  }
  return std::to_string(runs) + " extensions over " + std::to_string(kCorpusSize) + " spaces";
}

std::string completion_certificates(Exec exec) {
  std::size_t runs = 0;
  for (std::uint64_t seed = 0; seed < kCorpusSize; ++seed) {
    const auto s = corpus_space(seed);
    if (s.size() > 5) continue;
    for (std::size_t base = 0; base < s.size(); ++base) {
      require(asymmetric_completion_finite(s, base, exec).certificate.complete,
              "certificate fails at seed " + std::to_string(seed));
      ++runs;
    }
  }
  return std::to_string(runs) + " extensions certified complete";
}

std::string classification(Exec exec) {
  const auto ex = build_two_point_example();
  const auto classes = classify_completions(ex.one_point, 1, {Rational(0), Rational(1)}, exec);
  auto has = [&](const FinitePMetricSpace& s) {
    for (const auto& c : classes) {
      if (c.size() == s.size() && find_isometry(c, s, IsometryMode::bijection)) return true;
    }
    return false;
  };
  require(classes.size() >= 2 && has(ex.one_point) && has(ex.two_point), "X1 or Y2 missing");
  const auto r = search_counterexample(SearchProperty::single_completion_only,
                                       {2, {Rational(0), Rational(1), Rational(2)}, 1}, exec);
  require(r.status == SearchStatus::exhausted_no_witness, "a space with a single completion was found");
  return std::to_string(classes.size()) + " completions of X1; " + r.annotation;
}

std::string kahn_facts(Exec exec) {
  for (const char* symbols : {"0", "01", "012"}) {
    const Alphabet sigma(symbols);
    for (std::size_t d = 0; d <= 6; ++d) {
      if (sigma.size() == 3 && d == 6) {
        require(check_axioms(kahn::truncate(sigma, d).table(), exec).passed(), "truncation fails");
      } else {
        kahn::truncate(sigma, d);  // validated on construction
      }
    }
  }
  const Alphabet bits("01");
  for (const auto& x : sample_streams()) {
    for (unsigned k = 0; k <= 10; ++k) {
      const auto w = kahn::density_witness(bits, kahn::Subset::words_minus_empty, x, Rational::pow2_neg(k));
      require(w.dense && w.symmetric, "no approximant for " + x.describe());
    }
  }
  const auto eps = kahn::density_witness(bits, kahn::Subset::words_minus_empty, KahnPoint::word(""),
                                         Rational(1, 2), 10);
  require(eps.dense && !eps.symmetric && eps.asymmetry && eps.asymmetry->verified_up_to_length == 10,
          "asymmetry certificate for the empty word");
  require(kahn::kahn_incompleteness_witness(bits).no_word_limit, "incompleteness witness");
  return "truncations, 20 streams x 11 radii, asymmetry at the empty word, incompleteness";
}

std::string quotient_claims() {
  const auto s = corpus_space(4);
  auto presented = PresentedSpace::finite(s);
  auto completion = complete(presented);
  std::vector<CompletionSpace::ClassId> ids(completion.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  require(completion.fragment(ids).size() == ids.size(), "fragment size");

  auto words = PresentedSpace::kahn_finite_words(Alphabet("01"), true);
  CompletionSpace kc(words);
  for (const auto& x : sample_streams()) {
    const auto id = kc.class_of(CauchySeqModel::make(words, kahn::KahnPrefixSeq{x, 1, 1}));
    for (const auto& alt : {kahn::KahnPrefixSeq{x, 2, 1}, kahn::KahnPrefixSeq{x, 3, 2},
                            kahn::KahnPrefixSeq{x, 1, 5}}) {
      require(kc.class_of(CauchySeqModel::make(words, alt)) == id, "alternate representative splits");
    }
    for (unsigned k = 0; k <= 10; ++k) {
      require(kc.symmetric_base_witness(id, Rational::pow2_neg(k)).has_value(),
              "no symmetric approximant for " + x.describe());
    }
  }
  std::vector<CompletionSpace::ClassId> all(kc.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  require(kc.fragment(all).size() == all.size(), "fragment size");
  return std::to_string(completion.size()) + " finite classes, " + std::to_string(kc.size()) +
         " Kahn classes";
}

std::string finite_collapse(Exec exec) {
  std::size_t runs = 0;
  for (std::uint64_t seed = 0; seed < kCorpusSize; ++seed) {
    const auto s = corpus_space(seed);
    if (s.size() > 5) continue;
    const auto c = finite_completion(complete(PresentedSpace::finite(s)));
    require(find_isometry(s, c, IsometryMode::bijection).has_value(),
            "completion differs at seed " + std::to_string(seed));
    ++runs;
  }
  (void)exec;
  return std::to_string(runs) + " completions isometric to their base";
}

std::string no_isometric_extension() {
  const auto ex = build_two_point_example();
  const auto finite = refute_isometric_extension(ex.one_point, {IsometryMode::embedding, {0}},
                                                 ex.two_point, 1, ex.one_point, 8);
  require(finite.status == RefutationStatus::global_obstruction, "X1/Y2 not refuted globally");
  const auto k = refute_isometric_extension_kahn(Alphabet("01"), KahnPoint::word(""), true, 10);
  require(k.status == RefutationStatus::global_obstruction, "Kahn empty-word instance not refuted");
  const auto control = refute_isometric_extension(ex.one_point, {IsometryMode::embedding, {0}},
                                                  ex.two_point, 1, ex.two_point, 8);
  require(control.status == RefutationStatus::candidate_found && control.candidate == std::string("b"),
          "positive control refuted");
  return "both instances refuted; control extends via b";
}

std::string impossibility_sweeps(Exec exec) {
  const SearchBounds bounds{3, {Rational(0), Rational(1, 2), Rational(1)}, 1};
  const auto a = search_counterexample(SearchProperty::proper_symmetrically_dense_subset, bounds, exec);
  const auto b = search_counterexample(SearchProperty::p_cauchy_incomplete_finite, bounds, exec);
  require(a.status == SearchStatus::exhausted_no_witness, "proper symmetrically dense subset found");
  require(b.status == SearchStatus::exhausted_no_witness, "incomplete finite space found");
  return std::to_string(a.states_explored) + " subsets, " + std::to_string(b.states_explored) + " spaces";
}

std::string zero_completion_facts() {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto s = corpus_space(seed);
    auto z = zero_completion(PresentedSpace::finite(s));
    require(z.members().size() == s.size() && z.completion().size() == s.size(),
            "finite zero completion does not collapse");
  }
  auto z = zero_completion(PresentedSpace::kahn_finite_words(Alphabet("01"), true));
  const auto& words = z.completion().presented();
  const auto stream = KahnPoint::stream(Stream::repeat("01"));
  require(z.accepts(CauchySeqModel::make(words, kahn::KahnPrefixSeq{stream, 1, 1})), "stream class rejected");
  require(z.contains(z.completion().embed_word("0110")), "word rejected");
  for (std::size_t i = 0; i < 10; ++i) {
    const auto target = sample_streams()[i];
    const auto model = CauchySeqModel::make(words, kahn::KahnPrefixSeq{target, 1 + i % 3, 1 + i % 2});
    require(z.zero_limit(model).has_value(), "0-Cauchy sequence without 0-limit");
  }
  return "finite collapse on 60 spaces; Kahn membership and 10 zero limits";
}

}  // namespace

std::vector<FixtureResult> run_fixtures(Exec exec, std::string_view only) {
  const std::vector<std::pair<std::string, std::function<std::string()>>> suite = {
      {"two-completions", [&] { return two_completions(exec); }},
      {"asymmetric-ball", [] { return asymmetric_ball(); }},
      {"extension-corpus", [&] { return extension_corpus(exec); }},
      {"completion-certificates", [&] { return completion_certificates(exec); }},
      {"completion-classification", [&] { return classification(exec); }},
      {"kahn-domain", [&] { return kahn_facts(exec); }},
      {"quotient-claims", [] { return quotient_claims(); }},
      {"finite-collapse", [&] { return finite_collapse(exec); }},
      {"no-isometric-extension", [] { return no_isometric_extension(); }},
      {"impossibility-sweeps", [&] { return impossibility_sweeps(exec); }},
      {"zero-completion", [] { return zero_completion_facts(); }},
  };
  std::vector<FixtureResult> out;
  for (const auto& [name, fn] : suite) {
    if (!only.empty() && name != only) continue;
    FixtureResult r{name, false, "", 0};
    const auto start = std::chrono::steady_clock::now();
    try {
      r.detail = fn();
      r.passed = true;
    } catch (const std::exception& e) {
      r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace pmetric
