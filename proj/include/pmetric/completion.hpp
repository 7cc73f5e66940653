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

// Symmetric p-Cauchy completion as a quotient of Cauchy sequence models.
//
// A class is a p-Cauchy sequence up to the equivalence
//
//   a ~ b  iff  lim p(a_n, a_n) = lim p(a_n, b_n) = lim p(b_n, b_n),
//
// and the distance between classes is lim p(a_n, b_n). Sequence models are
// restricted to forms whose limits are exactly computable: eventually
// periodic sequences in a finite space, and prefix sequences in the Kahn
// domain.

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pmetric/isometry.hpp"
#include "pmetric/kahn.hpp"
#include "pmetric/sequence.hpp"
#include "pmetric/space.hpp"

namespace pmetric {

enum class PresentationKind { finite, kahn_finite_words, kahn_full };

/// A space whose distances are exactly computable.
///   finite            a FinitePMetricSpace
///   kahn_finite_words all finite words (optionally without ε)
///   kahn_full         all finite and infinite strings (optionally without ε)
class PresentedSpace {
 public:
  static PresentedSpace finite(FinitePMetricSpace space);
  static PresentedSpace kahn_finite_words(kahn::Alphabet alphabet, bool without_empty = false);
  static PresentedSpace kahn_full(kahn::Alphabet alphabet, bool without_empty = false);

  [[nodiscard]] PresentationKind kind() const noexcept { return kind_; }
  [[nodiscard]] bool is_finite() const noexcept { return kind_ == PresentationKind::finite; }
  [[nodiscard]] const FinitePMetricSpace& finite_space() const;
  [[nodiscard]] const kahn::Alphabet& alphabet() const;
  [[nodiscard]] bool without_empty() const noexcept { return without_empty_; }

  /// Whether a Kahn point belongs to the presented set.
  [[nodiscard]] bool contains(const kahn::KahnPoint& point) const;

 private:
  PresentedSpace() = default;

  PresentationKind kind_ = PresentationKind::finite;
  std::optional<FinitePMetricSpace> finite_;
  std::optional<kahn::Alphabet> alphabet_;
  bool without_empty_ = false;
};

/// A p-Cauchy sequence of base points. Construction verifies that the
/// double limit exists and that every term lies in the presented space.
class CauchySeqModel {
 public:
  static CauchySeqModel make(const PresentedSpace& space, EventuallyPeriodicSeq seq);
  static CauchySeqModel make(const PresentedSpace& space, kahn::KahnPrefixSeq seq);

  /// The constant sequence at a base point.
  static CauchySeqModel constant(const PresentedSpace& space, std::size_t point);
  static CauchySeqModel constant_word(const PresentedSpace& space, std::string word);

  [[nodiscard]] bool is_finite() const noexcept {
    return std::holds_alternative<EventuallyPeriodicSeq>(seq_);
  }
  [[nodiscard]] const EventuallyPeriodicSeq& finite_seq() const { return std::get<EventuallyPeriodicSeq>(seq_); }
  [[nodiscard]] const kahn::KahnPrefixSeq& kahn_seq() const { return std::get<kahn::KahnPrefixSeq>(seq_); }

  /// lim_{n,m} p(x_n, x_m), which equals lim_n p(x_n, x_n).
  [[nodiscard]] const Rational& double_limit() const noexcept { return double_limit_; }

  [[nodiscard]] std::string describe(const PresentedSpace& space) const;

 private:
  CauchySeqModel(std::variant<EventuallyPeriodicSeq, kahn::KahnPrefixSeq> seq, Rational limit)
      : seq_(std::move(seq)), double_limit_(std::move(limit)) {}

  std::variant<EventuallyPeriodicSeq, kahn::KahnPrefixSeq> seq_;
  Rational double_limit_;
};

/// lim_n p(a_n, b_n), none if it does not exist.
std::optional<Rational> cross_limit(const PresentedSpace& space, const CauchySeqModel& a,
                                    const CauchySeqModel& b);

struct EquivalenceVerdict {
  bool equivalent = false;
  Rational self_a;
  Rational self_b;
  std::optional<Rational> cross;
  std::string diagnostic;
};

/// a ~ b iff the three limits exist and agree exactly.
EquivalenceVerdict seq_equivalent(const PresentedSpace& space, const CauchySeqModel& a,
                                  const CauchySeqModel& b);

struct CompletionClass {
  CauchySeqModel representative;
  Rational self_distance;
  bool base = false;  // contains a constant sequence at a base point
  std::string label;
};

/// Distance between classes through their representatives.
Rational quotient_pmetric(const PresentedSpace& space, const CompletionClass& a,
                          const CompletionClass& b);

/// Append-only collection of completion classes. Classes are materialised on
/// demand and deduplicated by seq_equivalent; all public members are safe to
/// call concurrently.
class CompletionSpace {
 public:
  using ClassId = std::size_t;

  explicit CompletionSpace(PresentedSpace presented);

  [[nodiscard]] const PresentedSpace& presented() const noexcept { return presented_; }

  /// Class of a model, creating it (with a canonical representative) if new.
  ClassId class_of(const CauchySeqModel& model);
  /// Isometric embedding of the base.
  ClassId embed(std::size_t point);
  ClassId embed_word(const std::string& word);
  /// kahn_full only: streams are base points there.
  ClassId embed_point(const kahn::KahnPoint& point);

  [[nodiscard]] std::size_t size() const;
  [[nodiscard]] CompletionClass at(ClassId id) const;
  [[nodiscard]] Rational distance(ClassId a, ClassId b) const;

  /// Materialised finite fragment; throws AxiomError if P1-P4 fail.
  [[nodiscard]] FinitePMetricSpace fragment(const std::vector<ClassId>& ids) const;
  [[nodiscard]] DistanceTable fragment_table(const std::vector<ClassId>& ids) const;

  /// A base point x_eps (a term of the representative) with
  ///   p([x_eps], [x]) < p([x_eps], [x_eps]) + eps  and  p([x], [x_eps]) < p([x], [x]) + eps.
  /// Returns the class of that base point.
  std::optional<ClassId> symmetric_base_witness(ClassId id, const Rational& epsilon);

 private:
  ClassId insert(const CauchySeqModel& model, bool base);
  CauchySeqModel canonical(const CauchySeqModel& model) const;
  CauchySeqModel term_model(const CauchySeqModel& model, std::size_t n) const;

  PresentedSpace presented_;
  mutable std::unique_ptr<std::mutex> mutex_;
  std::vector<std::shared_ptr<const CompletionClass>> classes_;
};

/// Finite kind: enumerates every p-Cauchy cycle model (length bounded by the
/// space size and an enumeration budget) and quotients them. The base points
/// are embedded first, so class i is the class of point i. Kahn kinds: the
/// base words are embedded lazily; stream classes appear on first query.
CompletionSpace complete(const PresentedSpace& presented);

/// The finite completion as a FinitePMetricSpace over all classes.
FinitePMetricSpace finite_completion(const CompletionSpace& completion);

/// Subspace of base classes plus classes of self-distance 0.
class ZeroCompletion {
 public:
  explicit ZeroCompletion(std::shared_ptr<CompletionSpace> completion)
      : completion_(std::move(completion)) {}

  [[nodiscard]] bool contains(CompletionSpace::ClassId id) const;
  bool accepts(const CauchySeqModel& model) { return contains(completion_->class_of(model)); }
  /// Members among the classes materialised so far.
  [[nodiscard]] std::vector<CompletionSpace::ClassId> members() const;

  /// For a 0-Cauchy model: the class it 0-converges to inside the subspace,
  /// checked by p(c,c) = lim p(c, [x_n]) = lim p([x_n], [x_n]) = 0.
  std::optional<CompletionSpace::ClassId> zero_limit(const CauchySeqModel& model);

  [[nodiscard]] CompletionSpace& completion() const noexcept { return *completion_; }

 private:
  std::shared_ptr<CompletionSpace> completion_;
};

ZeroCompletion zero_completion(const PresentedSpace& presented);

struct EmbeddingExtension {
  std::vector<std::size_t> images;     // images[class] = target point
  bool isometric = false;
  std::vector<std::size_t> survivors;  // target points compatible with an isometric extension
  bool unique = false;
};

class ExtensionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Extends an isometric embedding f of the finite base into a finite target
/// across all classes of the completion: each class goes to the p-limit of
/// its image sequence. Uniqueness: a target point y can be the image of [x]
/// under some isometric extension only if p(y,y) = p([x],[x]) and
/// p(y, f(b)) = p([x],[b]) for every base point b; the survivor count must be 1.
EmbeddingExtension extend_embedding(CompletionSpace& completion, const IsometryWitness& f,
                                    const FinitePMetricSpace& target);

struct KahnEmbeddingExtension {
  std::vector<kahn::KahnPoint> images;  // per tested class
  bool isometric = false;
  std::vector<std::size_t> survivors;
  bool unique = false;
};

/// Identity on words into the full Kahn domain, extended to the given classes
/// of a Kahn completion. Survivors are counted over `candidates` plus the
/// images, using approximants at eps = 2^-k for k <= max_exponent.
KahnEmbeddingExtension extend_embedding_kahn(CompletionSpace& completion,
                                             const std::vector<CompletionSpace::ClassId>& classes,
                                             const std::vector<kahn::KahnPoint>& candidates,
                                             std::size_t max_exponent = 16);

enum class RefutationStatus {
  global_obstruction,  // required self-distance is not attained anywhere in the target
  exhausted,           // the whole (finite) target was searched without a candidate
  candidate_found,     // an isometric extension point exists: no refutation
  inconclusive         // search depth ran out without a global argument
};

std::string_view refutation_name(RefutationStatus status) noexcept;

struct RefutationResult {
  RefutationStatus status = RefutationStatus::inconclusive;
  Rational required_self_distance;
  std::size_t candidates_checked = 0;
  std::optional<std::string> candidate;
  std::string note;

  [[nodiscard]] bool refuted() const noexcept {
    return status == RefutationStatus::global_obstruction || status == RefutationStatus::exhausted;
  }
};

/// Looks for y in the target with p(y,y) = p(w,w) and p(y, f(x)) = p(w,x) for
/// every base point x, where w is the extra point of the superspace. Only the
/// first `depth` target points are searched.
RefutationResult refute_isometric_extension(const FinitePMetricSpace& base, const IsometryWitness& f,
                                            const FinitePMetricSpace& super_space,
                                            std::size_t extra_point,
                                            const FinitePMetricSpace& target, std::size_t depth);

/// Kahn instance: base = target = Kahn domain (optionally without ε) sampled
/// by words of length <= depth, f = identity, and the superspace adds `extra`.
RefutationResult refute_isometric_extension_kahn(const kahn::Alphabet& alphabet,
                                                 const kahn::KahnPoint& extra, bool without_empty,
                                                 std::size_t depth);

}  // namespace pmetric
