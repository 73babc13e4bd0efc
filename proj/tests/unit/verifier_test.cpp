#include "common.hpp"
#include "freeiso/decision.hpp"
#include "freeiso/verifier.hpp"

namespace {

Outcome decided(const char* text, std::size_t n) {
  Presentation p = P(text);
  WordProblemOracle o = compose_oracle(p, Budget{});
  return decide_free(o, n, Budget{});
}

}  // namespace

TEST_CASE("conjugate products") {
  Presentation p = P("<a,b | b>");
  ConjugateProduct ok{{{W(p, "a"), 0, 1}}};
  CHECK(verify::trivial(p, W(p, "a*b*a^-1"), ok).ok);
  CHECK_FALSE(verify::trivial(p, W(p, "a*b^-1*a^-1"), ok).ok);
  CHECK_FALSE(verify::trivial(p, W(p, "a*b*a^-1"), ConjugateProduct{{{W(p, "a"), 1, 1}}}).ok);
  CHECK_FALSE(verify::trivial(p, W(p, "a*b*a^-1"), ConjugateProduct{{{W(p, "a"), 0, 2}}}).ok);
  ConjugateProduct noncanonical{{{W(p, "a*b"), 0, 1}}};
  CHECK_FALSE(verify::trivial(p, W(p, "a*b*a^-1"), noncanonical).ok);
}

TEST_CASE("nontriviality witnesses") {
  Presentation z2 = P("<a,b | [a,b]>");
  CHECK(verify::nontrivial(z2, W(z2, "a"), AbelianImage{to_integers({1, 0})}).ok);
  CHECK_FALSE(verify::nontrivial(z2, W(z2, "a"), AbelianImage{to_integers({0, 1})}).ok);
  CHECK_FALSE(verify::nontrivial(z2, W(z2, "[a,b]"), AbelianImage{to_integers({0, 0})}).ok);

  auto rs = std::make_shared<const RewritingSystem>(*knuth_bendix(z2, Budget{}).system);
  NormalFormNonEmpty nf{rs, to_letter_string(W(z2, "a*b"))};
  CHECK(verify::nontrivial(z2, W(z2, "b*a"), nf).ok);
  CHECK_FALSE(verify::nontrivial(z2, W(z2, "b*a^-1"), nf).ok);

  Presentation c2 = P("<a | a^2>");
  CHECK_FALSE(verify::nontrivial(c2, W(c2, "a"), NormalFormNonEmpty{rs, to_letter_string(W(z2, "a"))}).ok);
}

TEST_CASE("rewriting systems need proofs") {
  Presentation z2 = P("<a,b | [a,b]>");
  RewritingSystem rs = *knuth_bendix(z2, Budget{}).system;
  CHECK(verify::rewriting_system(z2, rs).ok);
  std::vector<RewriteRule> rules = rs.rules();
  for (auto& r : rules) {
    if (!r.proof->terms.empty()) {
      r.proof->terms[0].exponent = -r.proof->terms[0].exponent;
      break;
    }
  }
  CHECK_FALSE(verify::rewriting_system(z2, rs.with_rules(rules)).ok);
  rules = rs.rules();
  rules.pop_back();
  CHECK_FALSE(verify::rewriting_system(z2, rs.with_rules(rules)).ok);
}

TEST_CASE("definitive outcomes replay") {
  for (auto [text, n] : std::vector<std::pair<const char*, std::size_t>>{
           {"<a | >", 1}, {"<a,b,c | c^-1*a*b>", 2}, {"<a | a^2>", 1}, {"<a,b | [a,b]>", 2},
           {"<a,b | b>", 1}, {"<a | >", 3}}) {
    CAPTURE(text);
    CHECK(verify::outcome(decided(text, n)).ok);
  }
}

TEST_CASE("tampered outcomes are rejected") {
  Outcome iso = decided("<a,b,c | c^-1*a*b>", 2);
  auto& v = std::get<Isomorphic>(iso.verdict);
  Outcome t1 = iso;
  std::get<Isomorphic>(t1.verdict).epi.phi.images[2] = F(2, "y*x");
  CHECK_FALSE(verify::outcome(t1).ok);
  Outcome t2 = iso;
  std::get<Isomorphic>(t2.verdict).psi.psi_images[0] = W(iso.group, "c");
  CHECK_FALSE(verify::outcome(t2).ok);
  Outcome t3 = iso;
  std::get<Isomorphic>(t3.verdict).epi.preimages.clear();
  CHECK_FALSE(verify::outcome(t3).ok);
  Outcome t4 = iso;
  std::get<Isomorphic>(t4.verdict).epi.hopfian_asserted = false;
  CHECK_FALSE(verify::outcome(t4).ok);
  CHECK(v.psi.roundtrip_proofs.size() == 3);

  Outcome shortcut = decided("<a,b | [a,b]>", 2);
  auto& obs = std::get<Obstruction>(std::get<NotIsomorphic>(shortcut.verdict).certificate);
  obs.commutator_proofs.clear();
  CHECK_FALSE(verify::outcome(shortcut).ok);

  Outcome mismatch = decided("<a | a^2>", 1);
  std::get<Obstruction>(std::get<NotIsomorphic>(mismatch.verdict).certificate).invariants.torsion.clear();
  CHECK_FALSE(verify::outcome(mismatch).ok);

  Outcome too_large = decided("<a | >", 2);
  too_large.target = Presentation::free(1);
  CHECK_FALSE(verify::outcome(too_large).ok);

  Obstruction none{ObstructionKind::NoEpimorphismFound, {}, {}, true};
  Outcome claimed{P("<a | a^2>"), Presentation::free(1), NotIsomorphic{none, std::nullopt}, {}};
  CHECK_FALSE(verify::outcome(claimed).ok);
}

TEST_CASE("preimages must be canonical") {
  Outcome iso = decided("<a,b | b>", 1);
  REQUIRE(is_isomorphic(iso));
  CHECK(std::get<Isomorphic>(iso.verdict).epi.preimages == std::vector<Word>{W(iso.group, "a")});
  Outcome padded = iso;
  std::get<Isomorphic>(padded.verdict).epi.preimages[0] = W(iso.group, "a*b");
  CHECK_FALSE(verify::outcome(padded).ok);
  CHECK(canonical_preimage(W(iso.group, "b*a*b^-1"), std::get<Isomorphic>(iso.verdict).epi.phi.images) ==
        W(iso.group, "a"));
}

TEST_CASE("inconclusive outcomes are accepted as such") {
  Outcome inc{P("<a,b | a^2*b^-3>"), Presentation::free(1), Inconclusive{"budget", std::nullopt, std::nullopt}, {}};
  CHECK(verify::outcome(inc).ok);
}
