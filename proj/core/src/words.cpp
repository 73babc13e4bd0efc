#include "freeiso/words.hpp"

#include <algorithm>
#include <string>

#include "freeiso/error.hpp"

namespace freeiso {

Word Word::reduce(std::span<const Letter> raw) {
  LetterString out;
  out.reserve(raw.size());
  for (Letter l : raw) {
    if (!out.empty() && out.back() == l.inverse()) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return Word(std::move(out));
}

Word Word::generator(GeneratorId gen, int sign) {
  return Word(LetterString{Letter(gen, sign)});
}

Word Word::from_reduced(LetterString letters) {
  return Word(std::move(letters));
}

std::size_t Word::min_rank() const {
  std::size_t r = 0;
  for (Letter l : letters_) {
    r = std::max<std::size_t>(r, l.gen() + 1);
  }
  return r;
}

Word invert(const Word& w) {
  LetterString out;
  out.reserve(w.length());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    out.push_back(it->inverse());
  }
  return Word::from_reduced(std::move(out));
}

Word concat(const Word& a, const Word& b) {
  auto la = a.letters();
  auto lb = b.letters();
  std::size_t cancel = 0;
  while (cancel < la.size() && cancel < lb.size()
         && la[la.size() - 1 - cancel] == lb[cancel].inverse()) {
    ++cancel;
  }
  LetterString out;
  out.reserve(la.size() + lb.size() - 2 * cancel);
  out.insert(out.end(), la.begin(), la.end() - cancel);
  out.insert(out.end(), lb.begin() + cancel, lb.end());
  return Word::from_reduced(std::move(out));
}

Word power(const Word& w, long long k) {
  Word base = k < 0 ? invert(w) : w;
  Word out;
  for (long long i = 0, n = k < 0 ? -k : k; i < n; ++i) {
    out = out * base;
  }
  return out;
}

Word commutator(const Word& a, const Word& b) {
  return a * b * invert(a) * invert(b);
}

bool shortlex_less(std::span<const Letter> a, std::span<const Letter> b) {
  if (a.size() != b.size()) {
    return a.size() < b.size();
  }
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

CyclicReduction cyclically_reduce(const Word& w) {
  auto l = w.letters();
  std::size_t i = 0;
  std::size_t j = l.size();
  while (j - i >= 2 && l[i] == l[j - 1].inverse()) {
    ++i;
    --j;
  }
  return {Word::from_reduced(LetterString(l.begin() + i, l.begin() + j)),
          Word::from_reduced(LetterString(l.begin(), l.begin() + i))};
}

bool is_cyclically_reduced(const Word& w) {
  return w.length() < 2 || w.front() != w.back().inverse();
}

Word primitive_root(const Word& w) {
  auto l = w.letters();
  std::size_t n = l.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) {
      continue;
    }
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) {
      periodic = l[i] == l[i - d];
    }
    if (periodic) {
      return Word::from_reduced(LetterString(l.begin(), l.begin() + d));
    }
  }
  return w;
}

Word substitute(const Word& w, std::span<const Word> images) {
  LetterString raw;
  for (Letter l : w.letters()) {
    if (l.gen() >= images.size()) {
      throw RankMismatch("substitute: generator " + std::to_string(l.gen())
                         + " has no image (only "
                         + std::to_string(images.size()) + " given)");
    }
    const Word& img = images[l.gen()];
    if (l.sign() > 0) {
      raw.insert(raw.end(), img.letters().begin(), img.letters().end());
    } else {
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it) {
        raw.push_back(it->inverse());
      }
    }
  }
  return Word::reduce(raw);
}

std::vector<long long> exponent_sums(const Word& w, std::size_t rank) {
  check_rank(w, rank);
  std::vector<long long> v(rank, 0);
  for (Letter l : w.letters()) {
    v[l.gen()] += l.sign();
  }
  return v;
}

void check_rank(const Word& w, std::size_t rank) {
  if (w.min_rank() > rank) {
    throw RankMismatch("word uses generator " + std::to_string(w.min_rank() - 1)
                       + " but alphabet rank is " + std::to_string(rank));
  }
}

namespace {

// Smallest code >= from that may follow `prev` in a reduced word.
std::optional<std::uint32_t> next_allowed(std::uint32_t from,
                                          std::optional<Letter> prev,
                                          std::size_t rank) {
  for (std::uint32_t c = from; c < 2 * rank; ++c) {
    if (!prev || Letter::from_code(c) != prev->inverse()) {
      return c;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<LetterString> first_reduced_of_length(std::size_t rank,
                                                    std::size_t length) {
  if (length > 0 && rank == 0) {
    return std::nullopt;
  }
  LetterString s;
  s.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    std::optional<Letter> prev;
    if (i > 0) {
      prev = s.back();
    }
    s.push_back(Letter::from_code(*next_allowed(0, prev, rank)));
  }
  return s;
}

bool next_reduced_same_length(LetterString& s, std::size_t rank) {
  for (std::size_t i = s.size(); i-- > 0;) {
    std::optional<Letter> prev;
    if (i > 0) {
      prev = s[i - 1];
    }
    auto c = next_allowed(s[i].code() + 1, prev, rank);
    if (!c) {
      continue;
    }
    s[i] = Letter::from_code(*c);
    for (std::size_t k = i + 1; k < s.size(); ++k) {
      s[k] = Letter::from_code(*next_allowed(0, s[k - 1], rank));
    }
    return true;
  }
  return false;
}

std::size_t count_reduced_words(std::size_t rank, std::size_t length) {
  if (length == 0) {
    return 1;
  }
  if (rank == 0) {
    return 0;
  }
  std::size_t n = 2 * rank;
  for (std::size_t i = 1; i < length; ++i) {
    n *= 2 * rank - 1;
  }
  return n;
}

WordEnumerator::WordEnumerator(std::size_t rank, std::size_t max_length)
    : rank_(rank), max_length_(max_length) {}

bool WordEnumerator::advance() {
  if (!started_) {
    started_ = true;
    current_.clear();
    return true;
  }
  if (next_reduced_same_length(current_, rank_)) {
    return true;
  }
  std::size_t len = current_.size() + 1;
  if (len > max_length_) {
    return false;
  }
  auto first = first_reduced_of_length(rank_, len);
  if (!first) {
    return false;
  }
  current_ = std::move(*first);
  return true;
}

std::optional<Word> WordEnumerator::next() {
  if (done_ || !advance()) {
    done_ = true;
    return std::nullopt;
  }
  ++emitted_;
  return Word::from_reduced(current_);
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Letter l : w.letters()) {
    h ^= l.code() + 1;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace freeiso
