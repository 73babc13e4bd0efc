#include "freeiso/conjugate_product.hpp"

#include "freeiso/error.hpp"

namespace freeiso {

Word term_value(const Presentation& p, const ConjugateTerm& t) {
  if (t.relator >= p.num_relators()) {
    throw PreconditionError("conjugate term references relator "
                            + std::to_string(t.relator) + " of "
                            + std::to_string(p.num_relators()));
  }
  if (t.exponent != 1 && t.exponent != -1) {
    throw PreconditionError("conjugate term exponent must be +1 or -1");
  }
  const Word& r = p.relator(t.relator);
  return t.conjugator * (t.exponent > 0 ? r : invert(r)) * invert(t.conjugator);
}

Word evaluate(const Presentation& p, const ConjugateProduct& cp) {
  Word acc;
  for (const ConjugateTerm& t : cp.terms) {
    acc = acc * term_value(p, t);
  }
  return acc;
}

ConjugateProduct inverse(const ConjugateProduct& cp) {
  ConjugateProduct out;
  out.terms.reserve(cp.terms.size());
  for (auto it = cp.terms.rbegin(); it != cp.terms.rend(); ++it) {
    out.terms.push_back({it->conjugator, it->relator, -it->exponent});
  }
  return out;
}

ConjugateProduct conjugate(const Presentation& p, const ConjugateProduct& cp,
                           const Word& x) {
  ConjugateProduct out;
  out.terms.reserve(cp.terms.size());
  for (const ConjugateTerm& t : cp.terms) {
    out.terms.push_back(
        {canonical_conjugator(p, t.relator, x * t.conjugator), t.relator, t.exponent});
  }
  return out;
}

ConjugateProduct multiply(const ConjugateProduct& a, const ConjugateProduct& b) {
  ConjugateProduct out = a;
  for (const ConjugateTerm& t : b.terms) {
    if (!out.terms.empty()) {
      const ConjugateTerm& last = out.terms.back();
      if (last.relator == t.relator && last.exponent == -t.exponent
          && last.conjugator == t.conjugator) {
        out.terms.pop_back();
        continue;
      }
    }
    out.terms.push_back(t);
  }
  return out;
}

Word canonical_conjugator(const Presentation& p, std::size_t relator,
                          const Word& c) {
  const Word root = primitive_root(p.relator(relator));
  const Word root_inv = invert(root);
  Word cur = c;
  while (true) {
    Word up = cur * root;
    if (shortlex_less(up, cur)) {
      cur = std::move(up);
      continue;
    }
    Word down = cur * root_inv;
    if (shortlex_less(down, cur)) {
      cur = std::move(down);
      continue;
    }
    return cur;
  }
}

bool is_canonical_conjugator(const Presentation& p, std::size_t relator,
                             const Word& c) {
  const Word root = primitive_root(p.relator(relator));
  return !shortlex_less(c * root, c) && !shortlex_less(c * invert(root), c);
}

}  // namespace freeiso
