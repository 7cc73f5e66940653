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

#include "pmetric/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "pmetric/completion.hpp"
#include "pmetric/errors.hpp"
#include "pmetric/extension.hpp"
#include "pmetric/fixtures.hpp"
#include "pmetric/isometry.hpp"
#include "pmetric/kahn.hpp"
#include "pmetric/pms.hpp"
#include "pmetric/report.hpp"
#include "pmetric/search.hpp"
#include "pmetric/sequence.hpp"

namespace pmetric::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(sep, start);
    if (end == std::string::npos) end = text.size();
    if (end > start) out.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : std::string(sep)) + p;
  return out;
}

Rational parse_rational(const std::string& text, const char* what) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw UsageError(std::string(what) + ": cannot parse '" + text + "'");
  }
}

std::size_t label_index(const FinitePMetricSpace& s, const std::string& label) {
  auto i = s.index_of(label);
  if (!i) throw UsageError("unknown point '" + label + "'");
  return *i;
}

PointSet parse_subset(const FinitePMetricSpace& s, const std::string& text) {
  std::vector<std::size_t> idx;
  for (const auto& l : split(text, ',')) idx.push_back(label_index(s, l));
  try {
    return PointSet::of(std::move(idx), s.size());
  } catch (const std::exception& e) {
    throw UsageError(std::string("subset: ") + e.what());
  }
}

std::string set_labels(const FinitePMetricSpace& s, const PointSet& set) {
  std::vector<std::string> names;
  for (auto i : set) names.push_back(s.label(i));
  return "{" + join(names, ",") + "}";
}

std::string mapping_text(const FinitePMetricSpace& src, const FinitePMetricSpace& dst,
                         const IsometryWitness& w) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < w.mapping.size(); ++i) {
    parts.push_back(src.label(i) + "->" + dst.label(w.mapping[i]));
  }
  return join(parts, ",");
}

IsometryWitness parse_mapping(const FinitePMetricSpace& src, const FinitePMetricSpace& dst,
                              const std::string& text) {
  IsometryWitness w{IsometryMode::embedding, std::vector<std::size_t>(src.size(), dst.size())};
  for (const auto& pair : split(text, ',')) {
    const auto eq = pair.find('=');
    if (eq == std::string::npos) throw UsageError("map entries are written x=y");
    w.mapping[label_index(src, pair.substr(0, eq))] = label_index(dst, pair.substr(eq + 1));
  }
  if (std::count(w.mapping.begin(), w.mapping.end(), dst.size())) {
    throw UsageError("map does not cover every base point");
  }
  return w;
}

std::string violation_text(const DistanceTable& t, const Violation& v) {
  std::vector<std::string> names;
  for (auto i : v.indices) names.push_back(t.label(i));
  return std::string(axiom_name(v.axiom)) + " " + join(names, ",") + " lhs=" + v.lhs.str() +
         " rhs=" + v.rhs.str();
}

kahn::Subset parse_kahn_subset(const std::string& text) {
  if (text == "all" || text == "all-words") return kahn::Subset::all_words;
  if (text == "nonempty" || text == "words-minus-empty") return kahn::Subset::words_minus_empty;
  throw UsageError("subset must be 'all' or 'nonempty'");
}

kahn::KahnPoint parse_point(const std::string& text) {
  try {
    return kahn::KahnPoint::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("point: ") + e.what());
  }
}

// Everything the subcommands bind to.
struct Options {
  bool serial = false;
  std::string file, file2, file3;
  std::string center, subset, epsilon, sequence, base, offset = "1", out_path, mode = "bijection";
  std::string map, extra, alphabet = "01", kahn_subset = "nonempty", property, grid = "0,1/2,1";
  std::string method = "dmax", x, y, classify, fixture;
  std::vector<std::string> points;
  bool pms_only = false, without_empty = false, full = false;
  std::size_t depth = 6, precision = 62, verify_depth = 10, max_points = 4096, n = 3, count = 1;
  std::size_t max_n = 3, extra_points = 1, enumerate = 0, max_violations = 50;
  std::uint64_t seed = 0;
  std::int64_t denominator = 4;
};

class Runner {
 public:
  Runner(const Options& o, std::istream& in, Report& report)
      : o_(o), in_(in), report_(report), exec_(o.serial ? Exec::serial : Exec::parallel) {}

  FinitePMetricSpace load(const std::string& path) {
    auto table = parse_pms(read_source(path, in_));
    report_.add_space("space", table);
    return FinitePMetricSpace::validate(std::move(table), exec_);
  }

  int check() {
    auto table = parse_pms(read_source(o_.file, in_));
    report_.add_space("space", table);
    const auto r = check_axioms(table, exec_);
    report_.add("verdict", r.passed());
    report_.add("violations", r.violations.size());
    for (std::size_t i = 0; i < std::min(r.violations.size(), o_.max_violations); ++i) {
      report_.add("violation", violation_text(table, r.violations[i]));
    }
    return r.passed() ? kTrue : kViolation;
  }

  int ball() {
    const auto s = load(o_.file);
    const auto eps = parse_rational(o_.epsilon, "--epsilon");
    const auto c = label_index(s, o_.center);
    const auto b = open_ball(s, c, eps);
    report_.add("center", s.label(c));
    report_.add("epsilon", eps);
    report_.add("ball", set_labels(s, b));
    report_.add("members", b.size());
    return kTrue;
  }

  int dense(bool symmetric) {
    const auto s = load(o_.file);
    const auto sub = parse_subset(s, o_.subset);
    report_.add("subset", set_labels(s, sub));
    if (!o_.epsilon.empty()) {
      const auto eps = parse_rational(o_.epsilon, "--epsilon");
      report_.add("epsilon", eps);
      for (std::size_t x = 0; x < s.size(); ++x) {
        const auto around_x = open_ball(s, x, eps);
        const bool ok = std::any_of(sub.begin(), sub.end(), [&](std::size_t y) {
          return around_x.contains(y) && (!symmetric || open_ball(s, y, eps).contains(x));
        });
        if (!ok) {
          report_.add("verdict", false);
          report_.add("counterwitness", s.label(x));
          return kFalse;
        }
      }
      report_.add("verdict", true);
      return kTrue;
    }
    const auto v = symmetric ? is_symmetrically_dense(s, sub) : is_dense(s, sub);
    report_.add("verdict", v.holds);
    for (std::size_t x = 0; x < s.size(); ++x) {
      if (v.witness.size() > x && v.witness[x]) {
        report_.add("witness", s.label(x) + " <- " + s.label(*v.witness[x]));
      }
    }
    if (v.counterexample) {
      const auto x = *v.counterexample;
      report_.add("counterwitness", s.label(x));
      // A radius at which the counterwitness is cut off from the subset.
      std::optional<Rational> gap;
      for (auto y : sub) {
        Rational g = s(x, y) - s.self(x);
        if (symmetric) g = std::max(g, s(y, x) - s.self(y));
        if (!gap || g < *gap) gap = g;
      }
      if (gap && gap->is_positive()) report_.add("separating-radius", *gap);
    }
    return v.holds ? kTrue : kFalse;
  }

  int seq() {
    const auto s = load(o_.file);
    EventuallyPeriodicSeq q = [&] {
      try {
        return parse_sequence(s, o_.sequence);
      } catch (const std::exception& e) {
        throw UsageError(std::string("--seq: ") + e.what());
      }
    }();
    const auto c = classify(s, q);
    report_.add("sequence", format_sequence(s, q));
    report_.add("p-cauchy", c.p_cauchy);
    if (c.p_cauchy_limit) report_.add("double-limit", *c.p_cauchy_limit);
    report_.add("zero-cauchy", c.zero_cauchy);
    if (c.self_limit) report_.add("self-limit", *c.self_limit);
    report_.add("p-limits", set_labels(s, c.p_limits));
    report_.add("zero-limits", set_labels(s, c.zero_limits));
    report_.add("top-limits", set_labels(s, c.top_limits));
    for (const auto& imp : check_implication_chain(s, q).implications) {
      report_.add("implication", imp.name + " " + (imp.holds ? "holds" : "FAILS"));
    }
    report_.add("verdict", c.p_converges());
    return c.p_converges() ? kTrue : kFalse;
  }

  int extend(std::ostream& out) {
    const auto s = load(o_.file);
    const auto base = label_index(s, o_.base);
    const auto offset = parse_rational(o_.offset, "--offset");
    if (!offset.is_positive()) throw UsageError("--offset must be positive");
    const auto ext = attach_asymmetric_point(s, base, offset);
    std::vector<std::size_t> olds(s.size());
    for (std::size_t i = 0; i < olds.size(); ++i) olds[i] = i;
    const auto old_set = PointSet::of(olds, ext.space.size());
    const auto cert = is_p_cauchy_complete_finite(ext.space, exec_);
    const bool dense = is_dense(ext.space, old_set).holds;
    const bool sym = is_symmetrically_dense(ext.space, old_set).holds;
    if (!o_.out_path.empty()) {
      std::ofstream f(o_.out_path);
      if (!f) throw UsageError("cannot write '" + o_.out_path + "'");
      f << emit_pms(ext.space);
    }
    if (o_.pms_only) {
      out << emit_pms(ext.space);
      return kTrue;
    }
    report_.add_space("extended", ext.space.table());
    report_.add("new-point", ext.space.label(ext.new_point));
    report_.add("base-point", s.label(base));
    report_.add("offset", offset);
    report_.add("axioms", check_axioms(ext.space.table(), exec_).passed());
    report_.add("restricts-to-input", ext.space.restrict_to(old_set) == s);
    report_.add("dense", dense);
    report_.add("symmetrically-dense", sym);
    report_.add("complete", cert.complete);
    report_.add("sequences-checked", cert.sequences_checked);
    const bool ok = dense && !sym && cert.complete;
    report_.add("verdict", ok);
    return ok ? kTrue : kFalse;
  }

  std::unique_ptr<CompletionSpace> kahn_completion(std::vector<CompletionSpace::ClassId>& ids) {
    const kahn::Alphabet sigma(o_.alphabet);
    auto presented = o_.full ? PresentedSpace::kahn_full(sigma, o_.without_empty)
                             : PresentedSpace::kahn_finite_words(sigma, o_.without_empty);
    auto c = std::make_unique<CompletionSpace>(complete(presented));
    for (const auto& text : o_.points) {
      const auto p = parse_point(text);
      if (p.is_word()) {
        ids.push_back(c->embed_word(p.as_word()));
      } else {
        ids.push_back(c->class_of(CauchySeqModel::make(c->presented(), kahn::KahnPrefixSeq{p, 1, 1})));
      }
    }
    report_.add("alphabet", o_.alphabet);
    report_.add("presentation", std::string(o_.full ? "all strings" : "finite words") +
                                    (o_.without_empty ? " without empty word" : ""));
    return c;
  }

  int complete_cmd() {
    if (o_.file.empty()) {
      std::vector<CompletionSpace::ClassId> ids;
      auto c = kahn_completion(ids);
      for (auto id : ids) {
        const auto cls = c->at(id);
        report_.add("class", cls.label + " self=" + cls.self_distance.str() +
                                 (cls.base ? " base" : " new"));
      }
      if (!ids.empty()) report_.add_space("fragment", c->fragment(ids).table());
      return kTrue;
    }
    const auto s = load(o_.file);
    auto c = complete(PresentedSpace::finite(s));
    for (std::size_t id = 0; id < c.size(); ++id) {
      const auto cls = c.at(id);
      report_.add("class", cls.label + " self=" + cls.self_distance.str() + " rep=" +
                               cls.representative.describe(c.presented()));
    }
    const auto fc = finite_completion(c);
    report_.add_space("completion", fc.table());
    const auto iso = find_isometry(s, fc, IsometryMode::bijection);
    report_.add("isometric-to-base", iso.has_value());
    if (iso) report_.add("isometry", mapping_text(s, fc, *iso));
    return kTrue;
  }

  int zero_complete() {
    if (o_.file.empty()) {
      std::vector<CompletionSpace::ClassId> ids;
      auto c = kahn_completion(ids);
      ZeroCompletion z(std::shared_ptr<CompletionSpace>(std::move(c)));
      bool all = true;
      for (std::size_t i = 0; i < ids.size(); ++i) {
        const auto cls = z.completion().at(ids[i]);
        const bool in = z.contains(ids[i]);
        all = all && in;
        report_.add("member", cls.label + " " + (in ? "true" : "false"));
      }
      report_.add("verdict", all);
      return all ? kTrue : kFalse;
    }
    const auto s = load(o_.file);
    auto z = zero_completion(PresentedSpace::finite(s));
    const auto members = z.members();
    report_.add("members", members.size());
    const bool collapses = members.size() == s.size() && z.completion().size() == s.size();
    report_.add("collapses-to-base", collapses);
    report_.add("verdict", collapses);
    return collapses ? kTrue : kFalse;
  }

  int isometry() {
    const auto a = load(o_.file);
    const auto b = load(o_.file2);
    IsometryMode mode;
    if (o_.mode == "bijection") {
      mode = IsometryMode::bijection;
    } else if (o_.mode == "embedding") {
      mode = IsometryMode::embedding;
    } else {
      throw UsageError("--mode must be bijection or embedding");
    }
    const auto w = find_isometry(a, b, mode);
    report_.add("mode", std::string(mode_name(mode)));
    report_.add("verdict", w.has_value());
    if (w) report_.add("witness", mapping_text(a, b, *w));
    return w ? kTrue : kFalse;
  }

  IsometryWitness mapping_or_search(const FinitePMetricSpace& a, const FinitePMetricSpace& b) {
    if (!o_.map.empty()) return parse_mapping(a, b, o_.map);
    auto w = find_isometry(a, b, IsometryMode::embedding);
    if (!w) throw UsageError("no isometric embedding of the base into the target; pass --map");
    return *w;
  }

  int extend_embedding() {
    const auto base = load(o_.file);
    const auto target = load(o_.file2);
    const auto f = mapping_or_search(base, target);
    report_.add("embedding", mapping_text(base, target, f));
    auto c = complete(PresentedSpace::finite(base));
    const auto r = pmetric::extend_embedding(c, f, target);
    for (std::size_t id = 0; id < r.images.size(); ++id) {
      report_.add("image", c.at(id).label + " -> " + target.label(r.images[id]) + " survivors=" +
                               std::to_string(r.survivors[id]));
    }
    report_.add("isometric", r.isometric);
    report_.add("unique", r.unique);
    report_.add("verdict", r.isometric && r.unique);
    return r.isometric && r.unique ? kTrue : kFalse;
  }

  void add_refutation(const RefutationResult& r) {
    report_.add("status", std::string(refutation_name(r.status)));
    report_.add("required-self-distance", r.required_self_distance);
    report_.add("candidates-checked", r.candidates_checked);
    if (r.candidate) report_.add("candidate", *r.candidate);
    report_.add("note", r.note);
    report_.add("verdict", r.refuted());
  }

  int refute() {
    if (o_.file.empty()) {
      const kahn::Alphabet sigma(o_.alphabet);
      const auto extra = parse_point(o_.extra);
      report_.add("alphabet", o_.alphabet);
      report_.add("extra", extra.describe());
      const auto r = refute_isometric_extension_kahn(sigma, extra, o_.without_empty, o_.depth);
      add_refutation(r);
      return r.refuted() ? kTrue : kFalse;
    }
    if (o_.file2.empty() || o_.file3.empty()) throw UsageError("expected BASE SUPER TARGET");
    const auto base = load(o_.file);
    const auto super = load(o_.file2);
    const auto target = load(o_.file3);
    const auto extra = label_index(super, o_.extra);
    const auto f = mapping_or_search(base, target);
    report_.add("embedding", mapping_text(base, target, f));
    const auto r = refute_isometric_extension(base, f, super, extra, target, o_.depth);
    add_refutation(r);
    return r.refuted() ? kTrue : kFalse;
  }

  int kahn_dist() {
    const auto a = parse_point(o_.x);
    const auto b = parse_point(o_.y);
    const auto br = kahn::kahn_pmetric(a, b, std::min(o_.precision, kahn::kMaxExponent));
    report_.add("x", a.describe());
    report_.add("y", b.describe());
    report_.add("lower", br.lower);
    report_.add("upper", br.upper);
    report_.add("exact", br.exact());
    return kTrue;
  }

  int kahn_truncate(std::ostream& out) {
    const kahn::Alphabet sigma(o_.alphabet);
    out << emit_pms(kahn::truncate(sigma, o_.depth, o_.max_points));
    return kTrue;
  }

  int kahn_witness() {
    const kahn::Alphabet sigma(o_.alphabet);
    const auto x = parse_point(o_.x);
    const auto eps = parse_rational(o_.epsilon, "--epsilon");
    const auto subset = parse_kahn_subset(o_.kahn_subset);
    const auto w = kahn::density_witness(sigma, subset, x, eps, o_.verify_depth);
    report_.add("point", x.describe());
    report_.add("subset", std::string(kahn::subset_name(subset)));
    report_.add("epsilon", eps);
    if (w.word) report_.add("witness", kahn::word_label(*w.word));
    report_.add("dense", w.dense);
    report_.add("symmetric", w.symmetric);
    if (w.asymmetry) {
      report_.add("cross-distance", w.asymmetry->cross_distance);
      report_.add("max-self-distance", w.asymmetry->max_self_distance);
      report_.add("verified-up-to-length", w.asymmetry->verified_up_to_length);
      report_.add("words-checked", w.asymmetry->words_checked);
    }
    report_.add("verdict", w.symmetric);
    return w.symmetric ? kTrue : kFalse;
  }

  int kahn_incomplete() {
    const kahn::Alphabet sigma(o_.alphabet);
    const auto w = kahn::kahn_incompleteness_witness(sigma, o_.depth);
    report_.add("sequence", "prefixes of " + w.sequence.target.describe());
    report_.add("double-limit", w.double_limit);
    report_.add("words-checked", w.words_checked);
    report_.add("verdict", w.no_word_limit);
    return w.no_word_limit ? kTrue : kFalse;
  }

  int gen(std::ostream& out) {
    for (std::size_t k = 0; k < o_.count; ++k) {
      if (k) out << '\n';
      const std::uint64_t seed = o_.seed + k;
      if (o_.method == "dmax") {
        GeneratorParams p;
        p.n = o_.n;
        p.seed = seed;
        p.denominator = o_.denominator;
        out << emit_pms(random_pmetric(p));
      } else if (o_.method == "rejection") {
        auto s = random_pmetric_rejection(o_.n, parse_grid(o_.grid), seed);
        if (!s) throw UsageError("rejection sampling found no valid space");
        out << emit_pms(*s);
      } else {
        throw UsageError("--method must be dmax or rejection");
      }
    }
    return kTrue;
  }

  int search(std::ostream& out) {
    const auto grid = parse_grid(o_.grid);
    if (o_.enumerate) {
      const auto all = enumerate_pmetrics(o_.enumerate, grid, exec_);
      for (std::size_t i = 0; i < all.size(); ++i) out << (i ? "\n" : "") << emit_pms(all[i]);
      return kTrue;
    }
    if (!o_.classify.empty()) {
      const auto s = FinitePMetricSpace::validate(parse_pms(read_source(o_.classify, in_)), exec_);
      const auto all = classify_completions(s, o_.extra_points, grid, exec_);
      for (std::size_t i = 0; i < all.size(); ++i) out << (i ? "\n" : "") << emit_pms(all[i]);
      return kTrue;
    }
    const auto prop = parse_property(o_.property);
    if (!prop) throw UsageError("unknown --property '" + o_.property + "'");
    const auto r = search_counterexample(*prop, {o_.max_n, grid, o_.extra_points}, exec_);
    report_.add("property", std::string(property_name(*prop)));
    report_.add("max-n", o_.max_n);
    report_.add("grid", o_.grid);
    report_.add("status", std::string(status_name(r.status)));
    report_.add("states-explored", r.states_explored);
    report_.add("annotation", r.annotation);
    if (r.witness) report_.add_space("witness", r.witness->table());
    return r.status == SearchStatus::exhausted_no_witness ? kTrue : kFalse;
  }

  int repro() {
    const auto results = run_fixtures(exec_, o_.fixture);
    if (results.empty()) throw UsageError("unknown fixture '" + o_.fixture + "'");
    bool all = true;
    for (const auto& f : results) {
      all = all && f.passed;
      char secs[32];
      std::snprintf(secs, sizeof secs, "%.3fs", f.seconds);
      report_.add("fixture", f.name + " " + (f.passed ? "PASS" : "FAIL") + " " + secs + " " + f.detail);
    }
    report_.add("verdict", all);
    return all ? kTrue : kFalse;
  }

 private:
  const Options& o_;
  std::istream& in_;
  Report& report_;
  Exec exec_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact partial metric spaces: axioms, denseness, completions, Kahn domain", "pmetric"};
  app.set_help_all_flag("--help-all");
  app.require_subcommand(1);
  app.add_flag("--serial", o.serial, "Use the serial reference kernels");

  auto file_arg = [&](CLI::App* sub, std::string& target, const char* name) {
    sub->add_option(name, target, "Space in .pms format ('-' for stdin)")->required();
  };

  auto* check = app.add_subcommand("check", "Check the partial metric axioms");
  file_arg(check, o.file, "file");
  check->add_option("--max-violations", o.max_violations, "Violations listed in the report");

  auto* ball = app.add_subcommand("ball", "Open ball B_eps(center)");
  file_arg(ball, o.file, "file");
  ball->add_option("--center", o.center)->required();
  ball->add_option("--epsilon", o.epsilon, "Radius p/q")->required();

  auto* dense = app.add_subcommand("dense", "Is the subset dense");
  auto* symdense = app.add_subcommand("symdense", "Is the subset symmetrically dense");
  for (auto* sub : {dense, symdense}) {
    file_arg(sub, o.file, "file");
    sub->add_option("--subset", o.subset, "Comma separated labels")->required();
    sub->add_option("--epsilon", o.epsilon, "Check a single radius p/q");
  }

  auto* seq = app.add_subcommand("seq", "Classify an eventually periodic sequence");
  file_arg(seq, o.file, "file");
  seq->add_option("--seq", o.sequence, "prefix;cycle, e.g. 'b;a'")->required();

  auto* extend = app.add_subcommand("extend", "Attach an asymmetric point");
  file_arg(extend, o.file, "file");
  extend->add_option("--base", o.base)->required();
  extend->add_option("--offset", o.offset, "Positive offset p/q");
  extend->add_option("--out", o.out_path, "Write the extended space here");
  extend->add_flag("--pms", o.pms_only, "Print only the extended space");

  auto* complete_c = app.add_subcommand("complete", "Symmetric p-Cauchy completion");
  auto* zero = app.add_subcommand("zero-complete", "0-completion");
  for (auto* sub : {complete_c, zero}) {
    sub->add_option("file", o.file, "Finite space (omit for the Kahn domain)");
    sub->add_option("--alphabet", o.alphabet);
    sub->add_option("--point", o.points, "Kahn point: word, eps, repeat:<w>, program:<id>");
    sub->add_flag("--without-empty", o.without_empty);
    sub->add_flag("--full", o.full, "Present all strings, not only words");
  }

  auto* iso = app.add_subcommand("isometry", "Find an isometry");
  file_arg(iso, o.file, "source");
  file_arg(iso, o.file2, "target");
  iso->add_option("--mode", o.mode, "bijection or embedding");

  auto* ext_emb = app.add_subcommand("extend-embedding", "Extend an isometric embedding to the completion");
  file_arg(ext_emb, o.file, "base");
  file_arg(ext_emb, o.file2, "target");
  ext_emb->add_option("--map", o.map, "x=y,... (default: least embedding)");

  auto* refute = app.add_subcommand("refute-extension", "Refute an isometric extension");
  refute->add_option("base", o.file);
  refute->add_option("super", o.file2);
  refute->add_option("target", o.file3);
  refute->add_option("--extra", o.extra, "Extra point (label, or Kahn point)")->required();
  refute->add_option("--map", o.map);
  refute->add_option("--depth", o.depth, "Search depth");
  refute->add_option("--alphabet", o.alphabet);
  refute->add_flag("--without-empty", o.without_empty);

  auto* kahn = app.add_subcommand("kahn", "Kahn domain");
  kahn->require_subcommand(1);
  auto* kdist = kahn->add_subcommand("dist", "p(x, y) with a certified bracket");
  kdist->add_option("x", o.x)->required();
  kdist->add_option("y", o.y)->required();
  kdist->add_option("--precision", o.precision, "Stream symbols read");
  auto* ktrunc = kahn->add_subcommand("truncate", "Words up to a length, as .pms");
  ktrunc->add_option("--alphabet", o.alphabet);
  ktrunc->add_option("--depth", o.depth)->required();
  ktrunc->add_option("--max-points", o.max_points);
  auto* kwit = kahn->add_subcommand("witness", "Density witness at a radius");
  kwit->add_option("--alphabet", o.alphabet);
  kwit->add_option("--point", o.x)->required();
  kwit->add_option("--epsilon", o.epsilon)->required();
  kwit->add_option("--subset", o.kahn_subset, "all or nonempty");
  kwit->add_option("--verify-depth", o.verify_depth);
  auto* kinc = kahn->add_subcommand("incomplete", "The words are not p-Cauchy complete");
  kinc->add_option("--alphabet", o.alphabet);
  kinc->add_option("--depth", o.depth, "Candidate words ruled out");

  auto* gen = app.add_subcommand("gen", "Random valid spaces as .pms blocks");
  gen->add_option("--seed", o.seed)->required();
  gen->add_option("--n", o.n);
  gen->add_option("--count", o.count);
  gen->add_option("--method", o.method, "dmax or rejection");
  gen->add_option("--grid", o.grid, "Grid for rejection sampling");
  gen->add_option("--denominator", o.denominator);

  auto* search = app.add_subcommand("search", "Exhaustive search over small spaces");
  search->add_option("--property", o.property);
  search->add_option("--max-n", o.max_n);
  search->add_option("--grid", o.grid);
  search->add_option("--extra", o.extra_points, "Extra points for completions (0 or 1)");
  search->add_option("--enumerate", o.enumerate, "Print every valid space with N points");
  search->add_option("--classify", o.classify, "Print the completions of a space");

  auto* repro = app.add_subcommand("repro", "Replay the fixture suite");
  repro->add_option("--fixture", o.fixture, "Run a single fixture by name");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kTrue : kUsage;
  }

  Report report;
  report.add("command", "pmetric " + join(args, " "));
  Runner r(o, in, report);
  int code = kUsage;
  bool raw = false;  // .pms output instead of a report
  try {
    if (app.got_subcommand(check)) code = r.check();
    else if (app.got_subcommand(ball)) code = r.ball();
    else if (app.got_subcommand(dense)) code = r.dense(false);
    else if (app.got_subcommand(symdense)) code = r.dense(true);
    else if (app.got_subcommand(seq)) code = r.seq();
    else if (app.got_subcommand(extend)) { raw = o.pms_only; code = r.extend(out); }
    else if (app.got_subcommand(complete_c)) code = r.complete_cmd();
    else if (app.got_subcommand(zero)) code = r.zero_complete();
    else if (app.got_subcommand(iso)) code = r.isometry();
    else if (app.got_subcommand(ext_emb)) code = r.extend_embedding();
    else if (app.got_subcommand(refute)) code = r.refute();
    else if (kahn->got_subcommand(kdist)) code = r.kahn_dist();
    else if (kahn->got_subcommand(ktrunc)) { raw = true; code = r.kahn_truncate(out); }
    else if (kahn->got_subcommand(kwit)) code = r.kahn_witness();
    else if (kahn->got_subcommand(kinc)) code = r.kahn_incomplete();
    else if (app.got_subcommand(gen)) { raw = true; code = r.gen(out); }
    else if (app.got_subcommand(search)) {
      raw = o.enumerate != 0 || !o.classify.empty();
      code = r.search(out);
    }
    else if (app.got_subcommand(repro)) code = r.repro();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const AxiomError& e) {
    report.add("verdict", false);
    for (const auto& v : e.report().violations) {
      report.add("violation", std::string(axiom_name(v.axiom)) + " lhs=" + v.lhs.str() + " rhs=" + v.rhs.str());
      if (report.get_all("violation").size() >= o.max_violations) break;
    }
    report.add("exit", std::to_string(kViolation));
    out << report.str();
    err << "error: input violates the partial metric axioms\n";
    return kViolation;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "refused: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  if (!raw) {
    report.add("exit", std::to_string(code));
    out << report.str();
  }
  return code;
}

}  // namespace pmetric::cli
