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

#include "pmetric/completion.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "pmetric/errors.hpp"

namespace pmetric {

using kahn::KahnPoint;
using kahn::KahnPrefixSeq;

// ---------------------------------------------------------------------------
// Presentations and models

PresentedSpace PresentedSpace::finite(FinitePMetricSpace space) {
  PresentedSpace p;
  p.kind_ = PresentationKind::finite;
  p.finite_ = std::move(space);
  return p;
}

PresentedSpace PresentedSpace::kahn_finite_words(kahn::Alphabet alphabet, bool without_empty) {
  PresentedSpace p;
  p.kind_ = PresentationKind::kahn_finite_words;
  p.alphabet_ = std::move(alphabet);
  p.without_empty_ = without_empty;
  return p;
}

PresentedSpace PresentedSpace::kahn_full(kahn::Alphabet alphabet, bool without_empty) {
  PresentedSpace p;
  p.kind_ = PresentationKind::kahn_full;
  p.alphabet_ = std::move(alphabet);
  p.without_empty_ = without_empty;
  return p;
}

const FinitePMetricSpace& PresentedSpace::finite_space() const {
  if (!finite_) throw PreconditionError("presentation is not a finite space");
  return *finite_;
}

const kahn::Alphabet& PresentedSpace::alphabet() const {
  if (!alphabet_) throw PreconditionError("presentation is not a Kahn domain");
  return *alphabet_;
}

namespace {

// Streams are only spot-checked against the alphabet on a finite prefix.
constexpr std::size_t kStreamAlphabetCheck = 64;

}  // namespace

bool PresentedSpace::contains(const KahnPoint& point) const {
  if (is_finite()) return false;
  if (point.is_word()) {
    const auto& w = point.as_word();
    return !(without_empty_ && w.empty()) && alphabet_->spells(w);
  }
  return kind_ == PresentationKind::kahn_full &&
         alphabet_->spells(point.prefix(kStreamAlphabetCheck));
}

CauchySeqModel CauchySeqModel::make(const PresentedSpace& space, EventuallyPeriodicSeq seq) {
  if (!space.is_finite()) throw PreconditionError("eventually periodic models need a finite space");
  seq.check_range(space.finite_space().size());
  auto limit = pmetric::double_limit(space.finite_space(), seq);
  if (!limit) throw PreconditionError("sequence is not p-Cauchy");
  return CauchySeqModel(std::move(seq), std::move(*limit));
}

CauchySeqModel CauchySeqModel::make(const PresentedSpace& space, KahnPrefixSeq seq) {
  if (space.is_finite()) throw PreconditionError("prefix models need a Kahn presentation");
  if (seq.stride == 0) throw PreconditionError("prefix schedule must be strictly increasing");
  const auto& target = seq.target;
  if (target.is_word()) {
    if (!space.alphabet().spells(target.as_word())) {
      throw PreconditionError("target word is not over the alphabet");
    }
  } else if (!space.alphabet().spells(target.prefix(kStreamAlphabetCheck))) {
    throw PreconditionError("target stream is not over the alphabet");
  }
  if (space.without_empty() && seq.length(0) == 0) {
    throw PreconditionError("sequence visits the excluded empty word");
  }
  // lcp(x_n, x_m) = min(len_n, len_m), so the double limit is p(target, target).
  Rational limit = kahn::kahn_distance(target, target);
  return CauchySeqModel(std::move(seq), std::move(limit));
}

CauchySeqModel CauchySeqModel::constant(const PresentedSpace& space, std::size_t point) {
  return make(space, EventuallyPeriodicSeq::constant(point));
}

CauchySeqModel CauchySeqModel::constant_word(const PresentedSpace& space, std::string word) {
  const std::size_t len = word.size();
  return make(space, KahnPrefixSeq{KahnPoint::word(std::move(word)), 1, len});
}

std::string CauchySeqModel::describe(const PresentedSpace& space) const {
  if (is_finite()) return format_sequence(space.finite_space(), finite_seq());
  const auto& s = kahn_seq();
  return "prefixes(" + s.target.describe() + ", " + std::to_string(s.stride) + "n+" +
         std::to_string(s.offset) + ")";
}

std::optional<Rational> cross_limit(const PresentedSpace& space, const CauchySeqModel& a,
                                    const CauchySeqModel& b) {
  if (a.is_finite() != b.is_finite()) throw PreconditionError("models from different presentations");
  if (!a.is_finite()) return kahn::kahn_distance(a.kahn_seq().target, b.kahn_seq().target);

  const auto& s = space.finite_space();
  const auto& x = a.finite_seq();
  const auto& y = b.finite_seq();
  // (x_n, y_n) is periodic from max(prefix) on, with period lcm(cycles).
  const std::size_t start = std::max(x.prefix().size(), y.prefix().size());
  const std::size_t period = std::lcm(x.cycle().size(), y.cycle().size());
  const Rational& c = s(x.at(start), y.at(start));
  for (std::size_t n = start; n < start + period; ++n) {
    if (s(x.at(n), y.at(n)) != c) return std::nullopt;
  }
  return c;
}

EquivalenceVerdict seq_equivalent(const PresentedSpace& space, const CauchySeqModel& a,
                                  const CauchySeqModel& b) {
  EquivalenceVerdict v;
  v.self_a = a.double_limit();
  v.self_b = b.double_limit();
  v.cross = cross_limit(space, a, b);
  if (!v.cross) {
    v.diagnostic = "lim p(a_n, b_n) does not exist";
    return v;
  }
  v.equivalent = v.self_a == *v.cross && *v.cross == v.self_b;
  if (!v.equivalent) {
    v.diagnostic = "limits differ: " + v.self_a.str() + ", " + v.cross->str() + ", " + v.self_b.str();
  }
  return v;
}

Rational quotient_pmetric(const PresentedSpace& space, const CompletionClass& a,
                          const CompletionClass& b) {
  auto v = cross_limit(space, a.representative, b.representative);
  if (!v) throw std::logic_error("cross limit of two p-Cauchy representatives does not exist");
  return *v;
}

// ---------------------------------------------------------------------------
// Completion space

CompletionSpace::CompletionSpace(PresentedSpace presented)
    : presented_(std::move(presented)), mutex_(std::make_unique<std::mutex>()) {}

CauchySeqModel CompletionSpace::canonical(const CauchySeqModel& model) const {
  if (model.is_finite()) {
    const auto c = classify(presented_.finite_space(), model.finite_seq());
    if (c.p_limits.empty()) throw std::logic_error("p-Cauchy sequence without a p-limit in a finite space");
    return CauchySeqModel::constant(presented_, c.p_limits.indices().front());
  }
  return CauchySeqModel::make(presented_, KahnPrefixSeq{model.kahn_seq().target, 1, 1});
}

CauchySeqModel CompletionSpace::term_model(const CauchySeqModel& model, std::size_t n) const {
  if (model.is_finite()) return CauchySeqModel::constant(presented_, model.finite_seq().at(n));
  return CauchySeqModel::constant_word(presented_, model.kahn_seq().term(n));
}

CompletionSpace::ClassId CompletionSpace::insert(const CauchySeqModel& model, bool base) {
  std::lock_guard lock(*mutex_);
  for (std::size_t id = 0; id < classes_.size(); ++id) {
    if (seq_equivalent(presented_, classes_[id]->representative, model).equivalent) return id;
  }
  auto rep = canonical(model);
  std::string label;
  if (rep.is_finite()) {
    label = "[" + presented_.finite_space().label(rep.finite_seq().at(0)) + "]";
  } else {
    label = "[" + rep.kahn_seq().target.describe() + "]";
  }
  Rational self = rep.double_limit();
  classes_.push_back(std::make_shared<const CompletionClass>(
      CompletionClass{std::move(rep), std::move(self), base, std::move(label)}));
  return classes_.size() - 1;
}

CompletionSpace::ClassId CompletionSpace::class_of(const CauchySeqModel& model) {
  bool base = true;
  if (!model.is_finite()) base = presented_.contains(model.kahn_seq().target);
  return insert(model, base);
}

CompletionSpace::ClassId CompletionSpace::embed(std::size_t point) {
  return class_of(CauchySeqModel::constant(presented_, point));
}

CompletionSpace::ClassId CompletionSpace::embed_word(const std::string& word) {
  if (!presented_.contains(KahnPoint::word(word))) {
    throw PreconditionError("word '" + word + "' is not a base point");
  }
  return class_of(CauchySeqModel::constant_word(presented_, word));
}

CompletionSpace::ClassId CompletionSpace::embed_point(const KahnPoint& point) {
  if (point.is_word()) return embed_word(point.as_word());
  if (presented_.kind() != PresentationKind::kahn_full || !presented_.contains(point)) {
    throw PreconditionError("stream '" + point.describe() + "' is not a base point");
  }
  return class_of(CauchySeqModel::make(presented_, KahnPrefixSeq{point, 1, 1}));
}

std::size_t CompletionSpace::size() const {
  std::lock_guard lock(*mutex_);
  return classes_.size();
}

CompletionClass CompletionSpace::at(ClassId id) const {
  std::lock_guard lock(*mutex_);
  return *classes_.at(id);
}

Rational CompletionSpace::distance(ClassId a, ClassId b) const {
  std::shared_ptr<const CompletionClass> ca, cb;
  {
    std::lock_guard lock(*mutex_);
    ca = classes_.at(a);
    cb = classes_.at(b);
  }
  return quotient_pmetric(presented_, *ca, *cb);
}

DistanceTable CompletionSpace::fragment_table(const std::vector<ClassId>& ids) const {
  std::vector<std::shared_ptr<const CompletionClass>> picked;
  {
    std::lock_guard lock(*mutex_);
    for (auto id : ids) picked.push_back(classes_.at(id));
  }
  std::vector<std::string> labels;
  std::vector<Rational> entries;
  for (const auto& a : picked) {
    labels.push_back(a->label);
    for (const auto& b : picked) entries.push_back(quotient_pmetric(presented_, *a, *b));
  }
  return DistanceTable(std::move(labels), std::move(entries));
}

FinitePMetricSpace CompletionSpace::fragment(const std::vector<ClassId>& ids) const {
  return FinitePMetricSpace::validate(fragment_table(ids));
}

std::optional<CompletionSpace::ClassId> CompletionSpace::symmetric_base_witness(
    ClassId id, const Rational& epsilon) {
  if (!epsilon.is_positive()) throw InvalidRadius("radius must be positive, got " + epsilon.str());
  const CompletionClass c = at(id);
  const auto& rep = c.representative;
  std::size_t horizon = 0;
  if (rep.is_finite()) {
    horizon = rep.finite_seq().prefix().size() + rep.finite_seq().cycle().size();
  } else {
    while (rep.kahn_seq().length(horizon) <= kahn::kMaxExponent && horizon <= kahn::kMaxExponent) {
      ++horizon;
    }
  }
  for (std::size_t n = 0; n < horizon; ++n) {
    const ClassId b = class_of(term_model(rep, n));
    const Rational bb = distance(b, b);
    const Rational bc = distance(b, id);
    const Rational cb = distance(id, b);
    if (bc < bb + epsilon && cb < c.self_distance + epsilon) return b;
  }
  return std::nullopt;
}

CompletionSpace complete(const PresentedSpace& presented) {
  CompletionSpace out(presented);
  if (!presented.is_finite()) return out;

  const auto& space = presented.finite_space();
  const std::size_t n = space.size();
  for (std::size_t i = 0; i < n; ++i) out.embed(i);

  // Every p-Cauchy cycle model, with and without a one-point prefix.
  constexpr std::size_t kModelBudget = 20000;
  std::size_t models = 0;
  std::size_t count = 1;
  for (std::size_t len = 1; len <= n; ++len) {
    count *= n;
    if (models + count * (n + 1) > kModelBudget && len > 1) break;
    for (std::size_t index = 0; index < count; ++index) {
      std::vector<std::size_t> cycle(len);
      std::size_t rest = index;
      for (std::size_t k = len; k-- > 0;) {
        cycle[k] = rest % n;
        rest /= n;
      }
      EventuallyPeriodicSeq seq({}, cycle);
      if (!double_limit(space, seq)) continue;
      out.class_of(CauchySeqModel::make(presented, seq));
      for (std::size_t head = 0; head < n; ++head) {
        out.class_of(CauchySeqModel::make(presented, EventuallyPeriodicSeq({head}, cycle)));
      }
      models += n + 1;
    }
  }
  return out;
}

FinitePMetricSpace finite_completion(const CompletionSpace& completion) {
  if (!completion.presented().is_finite()) throw PreconditionError("completion is not finite");
  std::vector<CompletionSpace::ClassId> ids(completion.size());
  std::iota(ids.begin(), ids.end(), 0);
  return completion.fragment(ids);
}

// ---------------------------------------------------------------------------
// 0-completion

bool ZeroCompletion::contains(CompletionSpace::ClassId id) const {
  const auto c = completion_->at(id);
  return c.base || c.self_distance.is_zero();
}

std::vector<CompletionSpace::ClassId> ZeroCompletion::members() const {
  std::vector<CompletionSpace::ClassId> out;
  const std::size_t n = completion_->size();
  for (std::size_t id = 0; id < n; ++id) {
    if (contains(id)) out.push_back(id);
  }
  return out;
}

std::optional<CompletionSpace::ClassId> ZeroCompletion::zero_limit(const CauchySeqModel& model) {
  if (!model.double_limit().is_zero()) return std::nullopt;
  const auto id = completion_->class_of(model);
  const auto c = completion_->at(id);
  const auto cross = cross_limit(completion_->presented(), c.representative, model);
  if (!c.self_distance.is_zero() || !cross || !cross->is_zero() || !contains(id)) return std::nullopt;
  return id;
}

ZeroCompletion zero_completion(const PresentedSpace& presented) {
  return ZeroCompletion(std::make_shared<CompletionSpace>(complete(presented)));
}

// ---------------------------------------------------------------------------
// Extensions of embeddings

EmbeddingExtension extend_embedding(CompletionSpace& completion, const IsometryWitness& f,
                                    const FinitePMetricSpace& target) {
  const auto& presented = completion.presented();
  const auto& base = presented.finite_space();
  if (!is_isometry(base, target, f)) throw PreconditionError("f is not an isometric embedding");

  std::vector<CompletionSpace::ClassId> base_class(base.size());
  for (std::size_t x = 0; x < base.size(); ++x) base_class[x] = completion.embed(x);

  EmbeddingExtension out;
  const std::size_t classes = completion.size();
  for (std::size_t id = 0; id < classes; ++id) {
    const auto rep = completion.at(id).representative.finite_seq();
    std::vector<std::size_t> head, cycle;
    for (auto x : rep.prefix()) head.push_back(f.mapping[x]);
    for (auto x : rep.cycle()) cycle.push_back(f.mapping[x]);
    const auto c = classify(target, EventuallyPeriodicSeq(std::move(head), std::move(cycle)));
    if (c.p_limits.empty()) {
      throw ExtensionFailure("image of class " + completion.at(id).label + " has no p-limit in the target");
    }
    out.images.push_back(c.p_limits.indices().front());
  }

  out.isometric = true;
  for (std::size_t a = 0; a < classes && out.isometric; ++a) {
    for (std::size_t b = 0; b < classes; ++b) {
      if (target(out.images[a], out.images[b]) != completion.distance(a, b)) {
        out.isometric = false;
        break;
      }
    }
  }

  out.unique = true;
  for (std::size_t id = 0; id < classes; ++id) {
    const Rational self = completion.at(id).self_distance;
    std::size_t survivors = 0;
    for (std::size_t y = 0; y < target.size(); ++y) {
      if (target.self(y) != self) continue;
      bool ok = true;
      for (std::size_t x = 0; x < base.size() && ok; ++x) {
        ok = target(y, f.mapping[x]) == completion.distance(id, base_class[x]);
      }
      if (ok) ++survivors;
    }
    out.survivors.push_back(survivors);
    if (survivors != 1) out.unique = false;
  }
  return out;
}

KahnEmbeddingExtension extend_embedding_kahn(CompletionSpace& completion,
                                             const std::vector<CompletionSpace::ClassId>& classes,
                                             const std::vector<KahnPoint>& candidates,
                                             std::size_t max_exponent) {
  const auto& presented = completion.presented();
  if (presented.is_finite()) throw PreconditionError("completion is not a Kahn completion");

  KahnEmbeddingExtension out;
  for (auto id : classes) {
    const auto c = completion.at(id);
    const auto& target = c.representative.kahn_seq().target;
    // The image must be the p-limit of the word sequence in the full domain.
    if (kahn::kahn_distance(target, target) != c.self_distance ||
        *cross_limit(presented, c.representative, c.representative) != c.self_distance) {
      throw ExtensionFailure("class " + c.label + " has no p-limit in the target");
    }
    out.images.push_back(target);
  }

  out.isometric = true;
  for (std::size_t a = 0; a < classes.size() && out.isometric; ++a) {
    for (std::size_t b = 0; b < classes.size(); ++b) {
      if (kahn::kahn_distance(out.images[a], out.images[b]) !=
          completion.distance(classes[a], classes[b])) {
        out.isometric = false;
        break;
      }
    }
  }

  // Distinct candidate points (images included).
  std::vector<KahnPoint> pool;
  auto add = [&](const KahnPoint& y) {
    const Rational yy = kahn::kahn_distance(y, y);
    for (const auto& z : pool) {
      if (kahn::kahn_distance(z, z) == yy && kahn::kahn_distance(y, z) == yy) return;
    }
    pool.push_back(y);
  };
  for (const auto& y : out.images) add(y);
  for (const auto& y : candidates) add(y);

  out.unique = true;
  for (auto id : classes) {
    const Rational self = completion.at(id).self_distance;
    std::vector<std::pair<std::string, Rational>> approximants;
    for (std::size_t k = 0; k <= max_exponent; ++k) {
      const auto b = completion.symmetric_base_witness(id, Rational::pow2_neg(static_cast<unsigned>(k)));
      if (!b) continue;
      approximants.emplace_back(completion.at(*b).representative.kahn_seq().target.as_word(),
                                completion.distance(id, *b));
    }
    std::size_t survivors = 0;
    for (const auto& y : pool) {
      if (kahn::kahn_distance(y, y) != self) continue;
      const bool ok = std::all_of(approximants.begin(), approximants.end(), [&](const auto& a) {
        return kahn::kahn_distance(y, KahnPoint::word(a.first)) == a.second;
      });
      if (ok) ++survivors;
    }
    out.survivors.push_back(survivors);
    if (survivors != 1) out.unique = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Refutation of isometric extensions

std::string_view refutation_name(RefutationStatus status) noexcept {
  switch (status) {
    case RefutationStatus::global_obstruction: return "global-obstruction";
    case RefutationStatus::exhausted: return "exhausted";
    case RefutationStatus::candidate_found: return "candidate-found";
    case RefutationStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

RefutationResult refute_isometric_extension(const FinitePMetricSpace& base, const IsometryWitness& f,
                                            const FinitePMetricSpace& super_space,
                                            std::size_t extra_point,
                                            const FinitePMetricSpace& target, std::size_t depth) {
  if (!is_isometry(base, target, f)) throw PreconditionError("f is not an isometric embedding");
  if (extra_point >= super_space.size() || super_space.size() != base.size() + 1) {
    throw PreconditionError("superspace must be the base plus one extra point");
  }
  // Base point x sits at super index sup[x].
  std::vector<std::size_t> sup;
  for (std::size_t i = 0; i < super_space.size(); ++i) {
    if (i != extra_point) sup.push_back(i);
  }
  for (std::size_t x = 0; x < base.size(); ++x) {
    for (std::size_t y = 0; y < base.size(); ++y) {
      if (super_space(sup[x], sup[y]) != base(x, y)) {
        throw PreconditionError("superspace does not restrict to the base");
      }
    }
  }

  RefutationResult out;
  out.required_self_distance = super_space.self(extra_point);
  std::set<Rational> range;
  for (std::size_t t = 0; t < target.size(); ++t) range.insert(target.self(t));
  if (!range.count(out.required_self_distance)) {
    out.status = RefutationStatus::global_obstruction;
    std::string values;
    for (const auto& r : range) values += (values.empty() ? "" : ", ") + r.str();
    out.note = "target self-distances are {" + values + "}; an image of " +
               super_space.label(extra_point) + " needs self-distance " +
               out.required_self_distance.str();
    return out;
  }

  const std::size_t limit = std::min(depth, target.size());
  for (std::size_t t = 0; t < limit; ++t) {
    ++out.candidates_checked;
    if (target.self(t) != out.required_self_distance) continue;
    bool ok = true;
    for (std::size_t x = 0; x < base.size() && ok; ++x) {
      ok = target(t, f.mapping[x]) == super_space(extra_point, sup[x]);
    }
    if (ok) {
      out.status = RefutationStatus::candidate_found;
      out.candidate = target.label(t);
      out.note = "mapping " + super_space.label(extra_point) + " to " + target.label(t) +
                 " preserves all distances";
      return out;
    }
  }
  if (limit == target.size()) {
    out.status = RefutationStatus::exhausted;
    out.note = "no target point has the required distance profile";
  } else {
    out.status = RefutationStatus::inconclusive;
    out.note = "searched " + std::to_string(limit) + " of " + std::to_string(target.size()) +
               " target points";
  }
  return out;
}

RefutationResult refute_isometric_extension_kahn(const kahn::Alphabet& alphabet,
                                                 const KahnPoint& extra, bool without_empty,
                                                 std::size_t depth) {
  const auto presented = PresentedSpace::kahn_full(alphabet, without_empty);
  if (presented.contains(extra)) throw PreconditionError("the extra point already lies in the base");
  const std::size_t min_len = without_empty ? 1 : 0;

  RefutationResult out;
  out.required_self_distance = kahn::kahn_distance(extra, extra);
  const Rational& r = out.required_self_distance;

  // Attained self-distances: 0 (streams) and 2^-k for k >= min_len (words).
  bool attained = r.is_zero();
  for (std::size_t k = min_len; k <= kahn::kMaxExponent && !attained; ++k) {
    attained = r == Rational::pow2_neg(static_cast<unsigned>(k));
  }
  if (!attained) {
    out.status = RefutationStatus::global_obstruction;
    out.note = "target self-distances are {0} and 2^-k for k >= " + std::to_string(min_len) +
               ", all different from p(" + extra.describe() + ", " + extra.describe() +
               ") = " + r.str();
    return out;
  }

  const auto sample = kahn::words_up_to(alphabet, depth, min_len);
  for (const auto& y : sample) {
    ++out.candidates_checked;
    const auto yp = KahnPoint::word(y);
    if (kahn::kahn_distance(yp, yp) != r) continue;
    const bool ok = std::all_of(sample.begin(), sample.end(), [&](const std::string& x) {
      const auto xp = KahnPoint::word(x);
      return kahn::kahn_distance(yp, xp) == kahn::kahn_distance(extra, xp);
    });
    if (ok) {
      out.status = RefutationStatus::candidate_found;
      out.candidate = kahn::word_label(y);
      out.note = "word " + kahn::word_label(y) + " matches all sampled distances";
      return out;
    }
  }
  out.status = RefutationStatus::inconclusive;
  out.note = "no candidate among words of length <= " + std::to_string(depth);
  return out;
}

}  // namespace pmetric
