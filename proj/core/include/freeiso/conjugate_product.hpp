#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "freeiso/presentation.hpp"
#include "freeiso/words.hpp"

namespace freeiso {

// One factor c * r_j^e * c^-1 of a product of conjugates of relators.
struct ConjugateTerm {
  Word conjugator;
  std::size_t relator = 0;
  int exponent = 1;  // +1 or -1

  bool operator==(const ConjugateTerm&) const = default;
};

// A proof that a word is trivial in a presented group: the free reduction of
// the product of its terms is the word itself.
struct ConjugateProduct {
  std::vector<ConjugateTerm> terms;

  bool operator==(const ConjugateProduct&) const = default;
};

Word term_value(const Presentation& p, const ConjugateTerm& t);

// Free reduction of the product of all terms.
Word evaluate(const Presentation& p, const ConjugateProduct& cp);

// Inverse element: reversed order, negated exponents.
ConjugateProduct inverse(const ConjugateProduct& cp);

// x * cp * x^-1, conjugators canonicalised.
ConjugateProduct conjugate(const Presentation& p, const ConjugateProduct& cp,
                           const Word& x);

// Concatenation followed by cancellation of adjacent mutually inverse terms.
ConjugateProduct multiply(const ConjugateProduct& a, const ConjugateProduct& b);

// The shortlex-least conjugator giving the same conjugate of relator j:
// the least element of c * <root(r_j)>.
Word canonical_conjugator(const Presentation& p, std::size_t relator,
                          const Word& c);
bool is_canonical_conjugator(const Presentation& p, std::size_t relator,
                             const Word& c);

}  // namespace freeiso
