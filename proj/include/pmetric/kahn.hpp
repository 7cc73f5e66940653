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

// The Kahn domain: finite and infinite strings over an alphabet with
// p(x, y) = 2^-lcp(x, y). Words have self-distance 2^-length, streams 0.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pmetric/rational.hpp"
#include "pmetric/space.hpp"

namespace pmetric::kahn {

/// Largest exponent representable as 2^-k.
inline constexpr std::size_t kMaxExponent = 62;

class Alphabet {
 public:
  /// Distinct printable symbols, none of ",;:#". Throws MalformedInput.
  explicit Alphabet(std::string symbols);

  [[nodiscard]] const std::string& symbols() const noexcept { return symbols_; }
  [[nodiscard]] std::size_t size() const noexcept { return symbols_.size(); }
  [[nodiscard]] char first() const noexcept { return symbols_.front(); }
  [[nodiscard]] bool contains(char c) const noexcept;
  [[nodiscard]] bool spells(std::string_view word) const noexcept;

 private:
  std::string symbols_;
};

/// An infinite string, never materialised. Copies share the oracle, which
/// must be safe to query concurrently.
class Stream {
 public:
  /// word^omega. word must be nonempty.
  static Stream repeat(std::string word);
  /// prefix followed by cycle^omega.
  static Stream periodic(std::string prefix, std::string cycle);
  /// Built-in non-eventually-periodic binary streams over {0,1}:
  /// "thue-morse", "fibonacci", "paperfolding".
  static Stream program(std::string_view id);
  /// oracle(k) must return the length-k prefix; coherence is checked on use.
  static Stream from_prefix_oracle(std::string name, std::function<std::string(std::size_t)> oracle);

  static const std::vector<std::string_view>& programs();

  /// Length-k prefix. Throws OracleViolation for an incoherent oracle.
  [[nodiscard]] std::string prefix(std::size_t k) const;
  [[nodiscard]] const std::string& name() const noexcept;

  /// Longest common prefix with another stream, or none if they are equal.
  /// Exact for periodic and built-in streams; a custom oracle is compared by
  /// scanning and throws UndecidableComparison if no mismatch shows up within
  /// the scan horizon.
  [[nodiscard]] std::optional<std::size_t> common_prefix(const Stream& other) const;

  struct Impl;

 private:
  explicit Stream(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

class KahnPoint {
 public:
  static KahnPoint word(std::string w) { return KahnPoint(std::move(w)); }
  static KahnPoint stream(Stream s) { return KahnPoint(std::move(s)); }

  /// "repeat:<w>", "program:<id>", "word:<w>", "eps" / "ε" for the empty word,
  /// otherwise a bare word.
  static KahnPoint parse(std::string_view spec);

  [[nodiscard]] bool is_word() const noexcept { return std::holds_alternative<std::string>(v_); }
  [[nodiscard]] bool is_stream() const noexcept { return !is_word(); }
  [[nodiscard]] const std::string& as_word() const { return std::get<std::string>(v_); }
  [[nodiscard]] const Stream& as_stream() const { return std::get<Stream>(v_); }

  /// Prefix of length min(k, length).
  [[nodiscard]] std::string prefix(std::size_t k) const;
  [[nodiscard]] std::string describe() const;

 private:
  explicit KahnPoint(std::string w) : v_(std::move(w)) {}
  explicit KahnPoint(Stream s) : v_(std::move(s)) {}
  std::variant<std::string, Stream> v_;
};

/// Label used for a word in reports and .pms files ("ε" for the empty word).
std::string word_label(const std::string& word);

/// Certified enclosure [lower, upper] of p(x, y).
struct DistanceBracket {
  Rational lower;
  Rational upper;

  [[nodiscard]] bool exact() const noexcept { return lower == upper; }
  [[nodiscard]] bool contains(const Rational& v) const noexcept { return lower <= v && v <= upper; }
};

/// Reads at most `precision` symbols of any stream; words are read fully.
/// The result is exact whenever a mismatch or a word end is seen, and always
/// for word/word pairs. Stream/stream agreement on all symbols read gives
/// [0, 2^-precision].
DistanceBracket kahn_pmetric(const KahnPoint& x, const KahnPoint& y, std::size_t precision);

/// lcp(x, y), none when infinite (x and y are the same stream).
std::optional<std::size_t> common_prefix_length(const KahnPoint& x, const KahnPoint& y);

/// Exact value 2^-lcp(x, y), 0 for a stream with itself.
Rational kahn_distance(const KahnPoint& x, const KahnPoint& y);

/// All words of length [min_length, depth] ordered by length, then by
/// alphabet order.
std::vector<std::string> words_up_to(const Alphabet& alphabet, std::size_t depth,
                                     std::size_t min_length = 0);

/// Finite fragment of all words of length <= depth. Throws BudgetExceeded
/// when the point count exceeds max_points.
FinitePMetricSpace truncate(const Alphabet& alphabet, std::size_t depth,
                            std::size_t max_points = 4096);

enum class Subset { all_words, words_minus_empty };

std::string_view subset_name(Subset subset) noexcept;

/// Every nonempty word y of length <= verified_up_to_length satisfies
/// p(y, ε) = 1 >= p(y, y) + epsilon, so ε has no symmetric approximant.
struct AsymmetryCertificate {
  Rational epsilon;
  Rational cross_distance;        // p(y, ε) for every nonempty y
  Rational max_self_distance;     // sup of p(y, y) over nonempty words
  std::size_t verified_up_to_length = 0;
  std::size_t words_checked = 0;
};

struct DensityWitness {
  std::optional<std::string> word;  // w in the subset with w in B_eps(x)
  bool dense = false;               // p(x, w) < p(x, x) + eps
  bool symmetric = false;           // additionally p(w, x) < p(w, w) + eps
  std::optional<AsymmetryCertificate> asymmetry;
};

/// Approximates x by a word of the subset at radius epsilon. Streams are
/// approximated by their shortest prefix w with 2^-|w| < epsilon. For x = ε
/// and the subset without ε, no symmetric approximant exists once
/// epsilon <= 1/2; the asymmetry certificate is then checked exhaustively
/// over nonempty words up to verify_depth.
DensityWitness density_witness(const Alphabet& alphabet, Subset subset, const KahnPoint& x,
                               const Rational& epsilon, std::size_t verify_depth = 10);

/// Sequence of words x_n = prefix of target with length stride * n + offset
/// (capped at the word length for word targets).
struct KahnPrefixSeq {
  KahnPoint target;
  std::size_t stride = 1;
  std::size_t offset = 1;

  [[nodiscard]] std::size_t length(std::size_t n) const noexcept;
  [[nodiscard]] std::string term(std::size_t n) const;
};

struct IncompletenessWitness {
  KahnPrefixSeq sequence;          // prefixes of first-symbol^omega
  Rational double_limit;           // lim_{n,m} p(x_n, x_m) = 0
  std::size_t words_checked = 0;   // words ruled out as p-limits
  bool no_word_limit = false;
};

/// lim_n p(w, x_n) for a word w, which is 2^-lcp(w, target).
Rational word_cross_limit(const std::string& w, const KahnPrefixSeq& seq);

/// The prefix sequence of the constant stream on the first symbol: 0-Cauchy
/// in the words, with no word as p-limit (a word would need self-distance 0).
/// Candidate words up to check_depth are ruled out explicitly.
IncompletenessWitness kahn_incompleteness_witness(const Alphabet& alphabet,
                                                  std::size_t check_depth = 8);

}  // namespace pmetric::kahn
