#include "common.hpp"
#include "freeiso/conjugate_product.hpp"
#include "oracles.hpp"

TEST_CASE("evaluate and inverse") {
  Presentation p = P("<a,b | [a,b]>");
  ConjugateProduct cp{{{W(p, "a"), 0, 1}, {Word(), 0, -1}}};
  Word v = evaluate(p, cp);
  CHECK(codes_of(v) == replay(p, cp));
  CHECK(evaluate(p, inverse(cp)) == invert(v));
  CHECK(evaluate(p, multiply(cp, inverse(cp))).is_identity());
  CHECK(multiply(cp, inverse(cp)).terms.empty());
}

TEST_CASE("conjugation keeps conjugators canonical") {
  Presentation p = P("<a,b | b>");
  ConjugateProduct cp{{{Word(), 0, 1}}};
  ConjugateProduct c = conjugate(p, cp, W(p, "a*b"));
  CHECK(evaluate(p, c) == W(p, "a*b*b*b^-1*a^-1"));
  for (const auto& t : c.terms) CHECK(is_canonical_conjugator(p, t.relator, t.conjugator));
}

TEST_CASE("canonical conjugators") {
  Presentation p = P("<a,b | b>");
  CHECK(canonical_conjugator(p, 0, W(p, "a*b")) == W(p, "a"));
  CHECK(canonical_conjugator(p, 0, W(p, "a*b^-3")) == W(p, "a"));
  CHECK(is_canonical_conjugator(p, 0, W(p, "a")));
  CHECK_FALSE(is_canonical_conjugator(p, 0, W(p, "b")));
  Presentation q = P("<a | a^4>");
  CHECK(canonical_conjugator(q, 0, W(q, "a^3")).is_identity());
}
