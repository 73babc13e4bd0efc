#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace freeiso {

using GeneratorId = std::uint32_t;

// A generator or its formal inverse. The code is 2*gen for x_gen and
// 2*gen+1 for x_gen^-1, so comparing codes gives the canonical letter order
// x_1 < x_1^-1 < x_2 < x_2^-1 < ...
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(GeneratorId gen, int sign)
      : code_(2 * gen + (sign < 0 ? 1u : 0u)) {}

  static constexpr Letter from_code(std::uint32_t code) {
    Letter l;
    l.code_ = code;
    return l;
  }

  constexpr GeneratorId gen() const { return code_ >> 1; }
  constexpr int sign() const { return (code_ & 1u) ? -1 : 1; }
  constexpr bool is_inverse() const { return (code_ & 1u) != 0; }
  constexpr std::uint32_t code() const { return code_; }
  constexpr Letter inverse() const { return from_code(code_ ^ 1u); }

  constexpr auto operator<=>(const Letter&) const = default;

 private:
  std::uint32_t code_ = 0;
};

// An unreduced sequence of letters. Rewriting systems operate on these.
using LetterString = std::vector<Letter>;

// A freely reduced word; the empty word is the identity. Equality of Words is
// equality in the free group.
class Word {
 public:
  Word() = default;

  // Free reduction of an arbitrary letter sequence.
  static Word reduce(std::span<const Letter> raw);
  static Word generator(GeneratorId gen, int sign = 1);
  // Wraps letters that the caller guarantees are already reduced.
  static Word from_reduced(LetterString letters);

  std::span<const Letter> letters() const { return letters_; }
  const LetterString& as_string() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  // One past the largest generator index used (0 for the identity).
  std::size_t min_rank() const;

  bool operator==(const Word&) const = default;

 private:
  explicit Word(LetterString letters) : letters_(std::move(letters)) {}
  LetterString letters_;
};

Word invert(const Word& w);
Word concat(const Word& a, const Word& b);
inline Word operator*(const Word& a, const Word& b) { return concat(a, b); }
Word power(const Word& w, long long k);
// a*b*a^-1*b^-1
Word commutator(const Word& a, const Word& b);

// Shortlex: shorter first, then lexicographic on letter codes.
bool shortlex_less(std::span<const Letter> a, std::span<const Letter> b);
inline bool shortlex_less(const Word& a, const Word& b) {
  return shortlex_less(a.letters(), b.letters());
}

struct CyclicReduction {
  Word core;
  Word conjugator;
};

// w = conjugator * core * conjugator^-1 with core cyclically reduced.
CyclicReduction cyclically_reduce(const Word& w);
bool is_cyclically_reduced(const Word& w);

// Smallest u with w = u^k; w must be cyclically reduced.
Word primitive_root(const Word& w);

// Replaces each letter x_i^{+-1} of w by images[i]^{+-1}.
// Throws RankMismatch if w uses a generator >= images.size().
Word substitute(const Word& w, std::span<const Word> images);

// Exponent sum of every generator, indexed by generator.
std::vector<long long> exponent_sums(const Word& w, std::size_t rank);

// Throws RankMismatch if w uses a generator >= rank.
void check_rank(const Word& w, std::size_t rank);

// Every freely reduced word over `rank` generators of length <= max_length,
// each exactly once, in shortlex order.
class WordEnumerator {
 public:
  WordEnumerator(std::size_t rank, std::size_t max_length);

  std::optional<Word> next();
  std::size_t emitted() const { return emitted_; }

 private:
  bool advance();

  std::size_t rank_;
  std::size_t max_length_;
  LetterString current_;
  bool started_ = false;
  bool done_ = false;
  std::size_t emitted_ = 0;
};

// The first reduced word of the given length in lexicographic order, or
// nullopt if none exists.
std::optional<LetterString> first_reduced_of_length(std::size_t rank,
                                                    std::size_t length);
// Advances to the next reduced word of the same length; false when exhausted.
bool next_reduced_same_length(LetterString& s, std::size_t rank);

// Number of reduced words of exactly `length` letters over `rank` generators.
std::size_t count_reduced_words(std::size_t rank, std::size_t length);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace freeiso
