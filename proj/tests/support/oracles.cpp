#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace freeiso::testing {

Codes codes_of(std::span<const Letter> letters) {
  Codes out;
  for (Letter l : letters) out.push_back(l.code());
  return out;
}

Codes codes_of(const Word& w) { return codes_of(w.letters()); }

LetterString letters_of(const Codes& c) {
  LetterString out;
  for (auto code : c) out.push_back(Letter::from_code(code));
  return out;
}

Codes naive_reduce(Codes s) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if ((s[i] ^ 1u) == s[i + 1]) {
        s.erase(s.begin() + static_cast<long>(i), s.begin() + static_cast<long>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return s;
}

bool naive_is_reduced(const Codes& s) { return naive_reduce(s) == s; }

Codes naive_inverse(const Codes& s) {
  Codes out(s.rbegin(), s.rend());
  for (auto& c : out) c ^= 1u;
  return out;
}

std::set<Codes> brute_reduced_words(std::size_t rank, std::size_t max_length) {
  std::set<Codes> out;
  std::vector<Codes> layer{Codes{}};
  for (std::size_t len = 0; len <= max_length; ++len) {
    std::vector<Codes> next;
    for (const Codes& s : layer) {
      if (naive_is_reduced(s)) out.insert(s);
      if (len == max_length) continue;
      for (std::uint32_t c = 0; c < 2 * rank; ++c) {
        Codes t = s;
        t.push_back(c);
        next.push_back(std::move(t));
      }
    }
    layer = std::move(next);
  }
  return out;
}

Codes replay(const Presentation& p, const ConjugateProduct& cp) {
  Codes all;
  for (const auto& t : cp.terms) {
    Codes c = codes_of(t.conjugator);
    Codes r = codes_of(p.relator(t.relator));
    if (t.exponent < 0) r = naive_inverse(r);
    all.insert(all.end(), c.begin(), c.end());
    all.insert(all.end(), r.begin(), r.end());
    Codes ci = naive_inverse(c);
    all.insert(all.end(), ci.begin(), ci.end());
  }
  return naive_reduce(all);
}

Integer brute_determinant(const IntegerMatrix& a) {
  std::vector<std::size_t> perm(a.rows());
  std::iota(perm.begin(), perm.end(), 0);
  Integer total = 0;
  do {
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      for (std::size_t j = i + 1; j < perm.size(); ++j) {
        if (perm[i] > perm[j]) sign = -sign;
      }
    }
    Integer prod = sign;
    for (std::size_t i = 0; i < perm.size(); ++i) prod *= a.at(i, perm[i]);
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

namespace {

void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (pick[i]) s.push_back(i);
    }
    out.push_back(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

Integer gcd(Integer a, Integer b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Integer t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

std::vector<Integer> determinantal_invariants(const IntegerMatrix& a) {
  std::size_t k_max = std::min(a.rows(), a.cols());
  std::vector<Integer> d{1};
  for (std::size_t k = 1; k <= k_max; ++k) {
    std::vector<std::vector<std::size_t>> rows, cols;
    subsets(a.rows(), k, rows);
    subsets(a.cols(), k, cols);
    Integer g = 0;
    for (const auto& r : rows) {
      for (const auto& c : cols) {
        IntegerMatrix minor(k, k);
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) minor.at(i, j) = a.at(r[i], c[j]);
        }
        g = gcd(g, brute_determinant(minor));
      }
    }
    d.push_back(g);
  }
  std::vector<Integer> out;
  for (std::size_t k = 1; k <= k_max; ++k) {
    out.push_back(d[k - 1] == 0 ? Integer(0) : Integer(d[k] / d[k - 1]));
  }
  return out;
}

Codes naive_normal_form(const std::vector<std::pair<Codes, Codes>>& rules, Codes s,
                        std::size_t max_steps) {
  for (std::size_t step = 0; step < max_steps; ++step) {
    bool applied = false;
    for (const auto& [lhs, rhs] : rules) {
      auto it = std::search(s.begin(), s.end(), lhs.begin(), lhs.end());
      if (it == s.end()) continue;
      auto at = it - s.begin();
      s.erase(it, it + static_cast<long>(lhs.size()));
      s.insert(s.begin() + at, rhs.begin(), rhs.end());
      applied = true;
      break;
    }
    if (!applied) return s;
  }
  throw std::runtime_error("naive_normal_form: step limit");
}

std::optional<CriticalPairFailure> brute_critical_pairs(
    const std::vector<std::pair<Codes, Codes>>& rules) {
  auto check = [&](const Codes& word, const Codes& a, const Codes& b)
      -> std::optional<CriticalPairFailure> {
    Codes na = naive_normal_form(rules, a);
    Codes nb = naive_normal_form(rules, b);
    if (na != nb) return CriticalPairFailure{word, na, nb};
    return std::nullopt;
  };
  for (const auto& [l1, r1] : rules) {
    for (const auto& [l2, r2] : rules) {
      for (std::size_t k = 1; k < l1.size() && k < l2.size(); ++k) {
        if (!std::equal(l1.end() - static_cast<long>(k), l1.end(), l2.begin())) continue;
        Codes word(l1.begin(), l1.end());
        word.insert(word.end(), l2.begin() + static_cast<long>(k), l2.end());
        Codes a = r1;
        a.insert(a.end(), l2.begin() + static_cast<long>(k), l2.end());
        Codes b(l1.begin(), l1.end() - static_cast<long>(k));
        b.insert(b.end(), r2.begin(), r2.end());
        if (auto f = check(word, a, b)) return f;
      }
      if (&l1 == &l2 || l2.size() > l1.size()) continue;
      for (std::size_t i = 0; i + l2.size() <= l1.size(); ++i) {
        if (!std::equal(l2.begin(), l2.end(), l1.begin() + static_cast<long>(i))) continue;
        Codes b(l1.begin(), l1.begin() + static_cast<long>(i));
        b.insert(b.end(), r2.begin(), r2.end());
        b.insert(b.end(), l1.begin() + static_cast<long>(i + l2.size()), l1.end());
        if (auto f = check(l1, r1, b)) return f;
      }
    }
  }
  return std::nullopt;
}

std::vector<std::pair<Codes, Codes>> rules_of(const RewritingSystem& rs) {
  std::vector<std::pair<Codes, Codes>> out;
  for (const auto& r : rs.rules()) out.emplace_back(codes_of(r.lhs), codes_of(r.rhs));
  return out;
}

Codes random_codes(Rng& rng, std::size_t rank, std::size_t max_length) {
  std::uniform_int_distribution<std::size_t> len(0, max_length);
  std::uniform_int_distribution<std::uint32_t> letter(0, static_cast<std::uint32_t>(2 * rank - 1));
  Codes out(len(rng));
  for (auto& c : out) c = letter(rng);
  return out;
}

Word random_word(Rng& rng, std::size_t rank, std::size_t max_length) {
  return Word::reduce(letters_of(random_codes(rng, rank, max_length)));
}

IntegerMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long long bound) {
  std::uniform_int_distribution<long long> entry(-bound, bound);
  std::uniform_int_distribution<int> sparse(0, 3);
  IntegerMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = sparse(rng) == 0 ? 0 : entry(rng);
  }
  return m;
}

}  // namespace freeiso::testing
