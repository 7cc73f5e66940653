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

#include "pmetric/kahn.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>

#include "pmetric/errors.hpp"

namespace pmetric::kahn {

Alphabet::Alphabet(std::string symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw MalformedInput("alphabet must be nonempty");
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const char c = symbols_[i];
    if (!std::isgraph(static_cast<unsigned char>(c)) || std::string_view(",;:#").find(c) != std::string_view::npos) {
      throw MalformedInput(std::string("invalid alphabet symbol '") + c + "'");
    }
    if (symbols_.find(c, i + 1) != std::string::npos) {
      throw MalformedInput(std::string("duplicate alphabet symbol '") + c + "'");
    }
  }
}

bool Alphabet::contains(char c) const noexcept { return symbols_.find(c) != std::string::npos; }

bool Alphabet::spells(std::string_view word) const noexcept {
  return std::all_of(word.begin(), word.end(), [this](char c) { return contains(c); });
}

// ---------------------------------------------------------------------------
// Streams

namespace {

enum class StreamKind { periodic, program, custom };

constexpr std::size_t kScanHorizon = std::size_t{1} << 16;
constexpr std::size_t kDistinctScanLimit = std::size_t{1} << 24;

char thue_morse(std::size_t i) { return (std::popcount(i) & 1) ? '1' : '0'; }

// Last digit of the Zeckendorf representation of i.
char fibonacci_word(std::size_t i) {
  std::vector<std::size_t> fib{1, 2};
  while (fib.back() <= i) fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
  bool last = false;
  std::size_t rest = i;
  for (std::size_t k = fib.size(); k-- > 0;) {
    if (fib[k] <= rest) {
      rest -= fib[k];
      last = (k == 0);
    }
  }
  return last ? '1' : '0';
}

// Regular paperfolding: n = i + 1 = 2^a * m with m odd, symbol 1 iff m = 1 mod 4.
char paperfolding(std::size_t i) {
  std::size_t n = i + 1;
  n >>= std::countr_zero(n);
  return (n % 4 == 1) ? '1' : '0';
}

}  // namespace

struct Stream::Impl {
  StreamKind kind;
  std::string name;
  std::string head;   // periodic
  std::string cycle;  // periodic
  char (*symbol_fn)(std::size_t) = nullptr;  // program
  std::function<std::string(std::size_t)> oracle;  // custom

  [[nodiscard]] std::string prefix(std::size_t k) const {
    if (kind == StreamKind::custom) {
      std::string p = oracle(k);
      if (p.size() != k) {
        throw OracleViolation("stream '" + name + "' returned a prefix of length " +
                              std::to_string(p.size()) + " for k = " + std::to_string(k));
      }
      const std::string next = oracle(k + 1);
      if (next.size() != k + 1 || next.compare(0, k, p) != 0) {
        throw OracleViolation("stream '" + name + "' is incoherent at k = " + std::to_string(k));
      }
      return p;
    }
    std::string out(k, '\0');
    for (std::size_t i = 0; i < k; ++i) out[i] = symbol(i);
    return out;
  }

  [[nodiscard]] char symbol(std::size_t i) const {
    switch (kind) {
      case StreamKind::periodic:
        return i < head.size() ? head[i] : cycle[(i - head.size()) % cycle.size()];
      case StreamKind::program:
        return symbol_fn(i);
      case StreamKind::custom:
        return prefix(i + 1)[i];
    }
    return '\0';
  }
};

Stream Stream::repeat(std::string word) {
  if (word.empty()) throw MalformedInput("repeat: needs a nonempty word");
  auto impl = std::make_shared<Impl>();
  impl->kind = StreamKind::periodic;
  impl->name = "repeat:" + word;
  impl->cycle = std::move(word);
  return Stream(std::move(impl));
}

Stream Stream::periodic(std::string prefix, std::string cycle) {
  if (cycle.empty()) throw MalformedInput("periodic stream needs a nonempty cycle");
  auto impl = std::make_shared<Impl>();
  impl->kind = StreamKind::periodic;
  impl->name = prefix.empty() ? "repeat:" + cycle : "periodic:" + prefix + ":" + cycle;
  impl->head = std::move(prefix);
  impl->cycle = std::move(cycle);
  return Stream(std::move(impl));
}

const std::vector<std::string_view>& Stream::programs() {
  static const std::vector<std::string_view> ids{"thue-morse", "fibonacci", "paperfolding"};
  return ids;
}

Stream Stream::program(std::string_view id) {
  auto impl = std::make_shared<Impl>();
  impl->kind = StreamKind::program;
  impl->name = "program:" + std::string(id);
  if (id == "thue-morse") {
    impl->symbol_fn = &thue_morse;
  } else if (id == "fibonacci") {
    impl->symbol_fn = &fibonacci_word;
  } else if (id == "paperfolding") {
    impl->symbol_fn = &paperfolding;
  } else {
    throw MalformedInput("unknown stream program '" + std::string(id) + "'");
  }
  return Stream(std::move(impl));
}

Stream Stream::from_prefix_oracle(std::string name,
                                  std::function<std::string(std::size_t)> oracle) {
  auto impl = std::make_shared<Impl>();
  impl->kind = StreamKind::custom;
  impl->name = std::move(name);
  impl->oracle = std::move(oracle);
  return Stream(std::move(impl));
}

std::string Stream::prefix(std::size_t k) const { return impl_->prefix(k); }

const std::string& Stream::name() const noexcept { return impl_->name; }

std::optional<std::size_t> Stream::common_prefix(const Stream& other) const {
  const Impl& a = *impl_;
  const Impl& b = *other.impl_;
  if (&a == &b) return std::nullopt;

  if (a.kind == StreamKind::periodic && b.kind == StreamKind::periodic) {
    // Past both heads, both are periodic with period lcm(|cycles|); agreement
    // over one such period means agreement forever.
    const std::size_t horizon =
        std::max(a.head.size(), b.head.size()) + std::lcm(a.cycle.size(), b.cycle.size());
    for (std::size_t i = 0; i < horizon; ++i) {
      if (a.symbol(i) != b.symbol(i)) return i;
    }
    return std::nullopt;
  }
  if (a.kind == StreamKind::program && b.kind == StreamKind::program && a.symbol_fn == b.symbol_fn) {
    return std::nullopt;
  }
  if (a.kind != StreamKind::custom && b.kind != StreamKind::custom) {
    // A built-in program is not eventually periodic and differs from every
    // other built-in, so a mismatch exists.
    for (std::size_t i = 0; i < kDistinctScanLimit; ++i) {
      if (a.symbol(i) != b.symbol(i)) return i;
    }
    throw std::logic_error("distinct streams agreed beyond the scan limit");
  }
  const std::string pa = a.prefix(kScanHorizon);
  const std::string pb = b.prefix(kScanHorizon);
  const auto mm = std::mismatch(pa.begin(), pa.end(), pb.begin());
  if (mm.first != pa.end()) return static_cast<std::size_t>(mm.first - pa.begin());
  throw UndecidableComparison("streams '" + a.name + "' and '" + b.name +
                              "' agree on the first " + std::to_string(kScanHorizon) + " symbols");
}

// ---------------------------------------------------------------------------
// Points

KahnPoint KahnPoint::parse(std::string_view spec) {
  auto starts = [&](std::string_view p) { return spec.substr(0, p.size()) == p; };
  if (starts("repeat:")) return stream(Stream::repeat(std::string(spec.substr(7))));
  if (starts("program:")) return stream(Stream::program(spec.substr(8)));
  if (starts("periodic:")) {
    const auto rest = spec.substr(9);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw MalformedInput("periodic point needs 'periodic:u:v'");
    return stream(Stream::periodic(std::string(rest.substr(0, colon)), std::string(rest.substr(colon + 1))));
  }
  if (starts("word:")) return word(std::string(spec.substr(5)));
  if (spec == "eps" || spec == "ε") return word("");
  if (spec.find(':') != std::string_view::npos) {
    throw MalformedInput("unknown point spec '" + std::string(spec) + "'");
  }
  return word(std::string(spec));
}

std::string KahnPoint::prefix(std::size_t k) const {
  if (is_word()) return as_word().substr(0, k);
  return as_stream().prefix(k);
}

std::string word_label(const std::string& word) { return word.empty() ? "ε" : word; }

std::string KahnPoint::describe() const {
  if (is_word()) return word_label(as_word());
  return as_stream().name();
}

namespace {

Rational pow2(std::size_t k) {
  if (k > kMaxExponent) throw std::overflow_error("2^-" + std::to_string(k) + " is not representable");
  return Rational::pow2_neg(static_cast<unsigned>(k));
}

std::size_t mismatch_index(std::string_view a, std::string_view b) {
  const std::size_t n = std::min(a.size(), b.size());
  const auto mm = std::mismatch(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n), b.begin());
  return static_cast<std::size_t>(mm.first - a.begin());
}

}  // namespace

DistanceBracket kahn_pmetric(const KahnPoint& x, const KahnPoint& y, std::size_t precision) {
  if (precision > kMaxExponent) throw PreconditionError("precision above 62 is not representable");
  if (x.is_word() && y.is_word()) {
    const auto v = pow2(mismatch_index(x.as_word(), y.as_word()));
    return {v, v};
  }
  if (x.is_word() != y.is_word()) {
    const auto& w = x.is_word() ? x.as_word() : y.as_word();
    const auto& s = x.is_word() ? y.as_stream() : x.as_stream();
    const std::size_t read = std::min(w.size(), precision);
    const std::string p = s.prefix(read);
    const std::size_t i = mismatch_index(std::string_view(w).substr(0, read), p);
    if (i < read || w.size() <= precision) {
      const auto v = pow2(i);
      return {v, v};
    }
    // Agreement on `precision` symbols; the true lcp lies in [precision, |w|].
    return {pow2(w.size()), pow2(precision)};
  }
  const std::string a = x.as_stream().prefix(precision);
  const std::string b = y.as_stream().prefix(precision);
  const std::size_t i = mismatch_index(a, b);
  if (i < precision) {
    const auto v = pow2(i);
    return {v, v};
  }
  return {Rational(0), pow2(precision)};
}

std::optional<std::size_t> common_prefix_length(const KahnPoint& x, const KahnPoint& y) {
  if (x.is_word() && y.is_word()) return mismatch_index(x.as_word(), y.as_word());
  if (x.is_word() != y.is_word()) {
    const auto& w = x.is_word() ? x.as_word() : y.as_word();
    const auto& s = x.is_word() ? y.as_stream() : x.as_stream();
    return mismatch_index(w, s.prefix(w.size()));
  }
  return x.as_stream().common_prefix(y.as_stream());
}

Rational kahn_distance(const KahnPoint& x, const KahnPoint& y) {
  const auto lcp = common_prefix_length(x, y);
  return lcp ? pow2(*lcp) : Rational(0);
}

std::vector<std::string> words_up_to(const Alphabet& alphabet, std::size_t depth,
                                     std::size_t min_length) {
  std::vector<std::string> out;
  std::vector<std::string> layer{""};
  for (std::size_t len = 0; len <= depth; ++len) {
    if (len >= min_length) out.insert(out.end(), layer.begin(), layer.end());
    if (len == depth) break;
    std::vector<std::string> next;
    next.reserve(layer.size() * alphabet.size());
    for (const auto& w : layer) {
      for (char c : alphabet.symbols()) next.push_back(w + c);
    }
    layer = std::move(next);
  }
  return out;
}

FinitePMetricSpace truncate(const Alphabet& alphabet, std::size_t depth, std::size_t max_points) {
  std::size_t points = 0;
  std::size_t layer = 1;
  for (std::size_t len = 0; len <= depth; ++len) {
    points += layer;
    if (points > max_points) {
      // Finish the count for the diagnostic without overflowing.
      std::size_t required = points;
      std::size_t l = layer;
      for (std::size_t k = len + 1; k <= depth && required <= (std::size_t{1} << 40); ++k) {
        l *= alphabet.size();
        required += l;
      }
      throw BudgetExceeded("truncation has too many points", required, max_points);
    }
    layer *= alphabet.size();
  }
  if (depth > kMaxExponent) throw PreconditionError("depth above 62 is not representable");

  const auto words = words_up_to(alphabet, depth);
  const std::size_t n = words.size();
  std::vector<Rational> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const auto v = Rational::pow2_neg(static_cast<unsigned>(mismatch_index(words[i], words[j])));
      table[i * n + j] = v;
      table[j * n + i] = v;
    }
  }
  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto& w : words) labels.push_back(word_label(w));
  return FinitePMetricSpace::validate(DistanceTable(std::move(labels), std::move(table)));
}

std::string_view subset_name(Subset subset) noexcept {
  return subset == Subset::all_words ? "all-words" : "words-minus-empty";
}

DensityWitness density_witness(const Alphabet& alphabet, Subset subset, const KahnPoint& x,
                               const Rational& epsilon, std::size_t verify_depth) {
  if (!epsilon.is_positive()) throw InvalidRadius("radius must be positive, got " + epsilon.str());
  const bool allow_empty = subset == Subset::all_words;

  auto evaluate = [&](std::string w) {
    DensityWitness out;
    const auto wp = KahnPoint::word(w);
    const Rational xx = kahn_distance(x, x);
    const Rational xw = kahn_distance(x, wp);
    const Rational ww = kahn_distance(wp, wp);
    out.dense = xw < xx + epsilon;
    out.symmetric = out.dense && xw < ww + epsilon;
    out.word = std::move(w);
    return out;
  };

  if (x.is_word()) {
    const auto& w = x.as_word();
    if (!w.empty() || allow_empty) return evaluate(w);

    // x is the empty word and the subset excludes it.
    auto out = evaluate(std::string(1, alphabet.first()));
    if (out.symmetric) return out;
    AsymmetryCertificate cert;
    cert.epsilon = epsilon;
    cert.cross_distance = Rational(1);
    cert.max_self_distance = Rational(1, 2);
    cert.verified_up_to_length = verify_depth;
    const auto empty = KahnPoint::word("");
    for (const auto& y : words_up_to(alphabet, verify_depth, 1)) {
      const auto yp = KahnPoint::word(y);
      const Rational cross = kahn_distance(yp, empty);
      const Rational self = kahn_distance(yp, yp);
      if (cross != cert.cross_distance || self > cert.max_self_distance || cross < self + epsilon) {
        throw std::logic_error("asymmetry certificate failed at word " + y);
      }
      ++cert.words_checked;
    }
    out.asymmetry = std::move(cert);
    return out;
  }

  // Shortest admissible prefix with 2^-k < epsilon.
  std::size_t k = allow_empty ? 0 : 1;
  while (!(Rational::pow2_neg(static_cast<unsigned>(k)) < epsilon)) {
    if (++k > kMaxExponent) throw PreconditionError("radius below 2^-62 is not supported");
  }
  return evaluate(x.prefix(k));
}

std::size_t KahnPrefixSeq::length(std::size_t n) const noexcept {
  const std::size_t len = stride * n + offset;
  if (target.is_word()) return std::min(len, target.as_word().size());
  return len;
}

std::string KahnPrefixSeq::term(std::size_t n) const { return target.prefix(length(n)); }

Rational word_cross_limit(const std::string& w, const KahnPrefixSeq& seq) {
  return kahn_distance(KahnPoint::word(w), seq.target);
}

IncompletenessWitness kahn_incompleteness_witness(const Alphabet& alphabet,
                                                  std::size_t check_depth) {
  IncompletenessWitness out{
      KahnPrefixSeq{KahnPoint::stream(Stream::repeat(std::string(1, alphabet.first()))), 1, 1},
      Rational(0), 0, true};
  // x_n, x_m share a prefix of length min(len_n, len_m), which grows without
  // bound: the double limit is 0.
  out.double_limit = kahn_distance(out.sequence.target, out.sequence.target);
  for (const auto& w : words_up_to(alphabet, check_depth)) {
    const auto wp = KahnPoint::word(w);
    // A p-limit needs p(w,w) = lim p(w, x_n) = lim p(x_n, x_n) = 0.
    const bool limit = kahn_distance(wp, wp) == word_cross_limit(w, out.sequence) &&
                       word_cross_limit(w, out.sequence) == out.double_limit;
    if (limit) out.no_word_limit = false;
    ++out.words_checked;
  }
  return out;
}

}  // namespace pmetric::kahn
