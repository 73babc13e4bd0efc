#include "freeiso/verifier.hpp"

#include <algorithm>

namespace freeiso::verify {

namespace {

Result check_all(std::initializer_list<Result> parts) {
  for (const Result& r : parts) {
    if (!r) return r;
  }
  return {};
}

Result with_context(Result r, const std::string& where) {
  if (!r) r.reason = where + ": " + r.reason;
  return r;
}

bool uses_rank_at_most(const Word& w, std::size_t rank) { return w.min_rank() <= rank; }

LetterString concat_strings(const LetterString& a, const LetterString& b) {
  LetterString s = a;
  s.insert(s.end(), b.begin(), b.end());
  return s;
}

// Every overlap and containment of two left-hand sides must rewrite to a
// single normal form.
Result confluent(const RewritingSystem& rs, const Limits& limits) {
  const auto& rules = rs.rules();
  auto nf = [&](const LetterString& s) { return rs.normal_form(s, limits.max_rewrite_steps); };
  auto joins = [&](const LetterString& a, const LetterString& b) -> Result {
    auto na = nf(a);
    auto nb = nf(b);
    if (!na || !nb) return Result::fail("rewrite limit reached while joining a critical pair");
    if (*na != *nb) return Result::fail("critical pair with two normal forms");
    return {};
  };
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const LetterString& l1 = rules[i].lhs;
    for (std::size_t k = 0; k < rules.size(); ++k) {
      const LetterString& l2 = rules[k].lhs;
      // suffix of l1 equals prefix of l2
      for (std::size_t len = 1; len < std::min(l1.size(), l2.size()); ++len) {
        if (!std::equal(l1.end() - static_cast<std::ptrdiff_t>(len), l1.end(), l2.begin())) continue;
        LetterString left = concat_strings(rules[i].rhs, LetterString(l2.begin() + static_cast<std::ptrdiff_t>(len), l2.end()));
        LetterString right = concat_strings(LetterString(l1.begin(), l1.end() - static_cast<std::ptrdiff_t>(len)), rules[k].rhs);
        if (Result r = joins(left, right); !r) return r;
      }
      // l2 occurs inside l1
      if (i == k || l2.size() > l1.size()) continue;
      for (std::size_t at = 0; at + l2.size() <= l1.size(); ++at) {
        if (!std::equal(l2.begin(), l2.end(), l1.begin() + static_cast<std::ptrdiff_t>(at))) continue;
        LetterString right(l1.begin(), l1.begin() + static_cast<std::ptrdiff_t>(at));
        right.insert(right.end(), rules[k].rhs.begin(), rules[k].rhs.end());
        right.insert(right.end(), l1.begin() + static_cast<std::ptrdiff_t>(at + l2.size()), l1.end());
        if (Result r = joins(rules[i].rhs, right); !r) return r;
      }
    }
  }
  return {};
}

}  // namespace

Result trivial(const Presentation& p, const Word& w, const ConjugateProduct& proof) {
  if (!uses_rank_at_most(w, p.num_generators())) return Result::fail("word uses an unknown generator");
  for (std::size_t i = 0; i < proof.terms.size(); ++i) {
    const ConjugateTerm& t = proof.terms[i];
    const std::string where = "term " + std::to_string(i);
    if (t.relator >= p.num_relators()) return Result::fail(where + ": relator index out of range");
    if (t.exponent != 1 && t.exponent != -1) return Result::fail(where + ": exponent must be +1 or -1");
    if (!uses_rank_at_most(t.conjugator, p.num_generators())) {
      return Result::fail(where + ": conjugator uses an unknown generator");
    }
    if (!is_canonical_conjugator(p, t.relator, t.conjugator)) {
      return Result::fail(where + ": conjugator is not canonical");
    }
  }
  if (evaluate(p, proof) != w) return Result::fail("product of conjugates does not reduce to the word");
  return {};
}

Result rewriting_system(const Presentation& p, const RewritingSystem& rs, const Limits& limits) {
  if (rs.num_generators() != p.num_generators()) {
    return Result::fail("rewriting system has the wrong number of generators");
  }
  for (std::size_t i = 0; i < rs.rules().size(); ++i) {
    const RewriteRule& r = rs.rules()[i];
    if (!r.proof) return Result::fail("rule " + std::to_string(i) + " carries no proof");
    Word target = Word::reduce(r.lhs) * invert(Word::reduce(r.rhs));
    if (Result res = trivial(p, target, *r.proof); !res) {
      return with_context(res, "rule " + std::to_string(i));
    }
  }
  auto to_empty = [&](const LetterString& s) {
    auto nf = rs.normal_form(s, limits.max_rewrite_steps);
    return nf && nf->empty();
  };
  for (GeneratorId g = 0; g < p.num_generators(); ++g) {
    Letter x(g, 1);
    if (!to_empty({x, x.inverse()}) || !to_empty({x.inverse(), x})) {
      return Result::fail("free cancellation does not rewrite to the empty word");
    }
  }
  for (std::size_t j = 0; j < p.num_relators(); ++j) {
    if (!to_empty(p.relator(j).as_string())) {
      return Result::fail("relator " + std::to_string(j) + " does not rewrite to the empty word");
    }
  }
  return confluent(rs, limits);
}

Result nontrivial(const Presentation& p, const Word& w, const NontrivialityWitness& witness,
                  const Limits& limits) {
  if (!uses_rank_at_most(w, p.num_generators())) return Result::fail("word uses an unknown generator");
  if (auto* a = std::get_if<AbelianImage>(&witness)) {
    if (a->exponents != to_integers(exponent_sums(w, p.num_generators()))) {
      return Result::fail("stored exponent vector differs from the word's");
    }
    if (RelatorLattice(p).contains(a->exponents)) {
      return Result::fail("exponent vector lies in the relator lattice");
    }
    return {};
  }
  const auto& nf = std::get<NormalFormNonEmpty>(witness);
  if (!nf.system) return Result::fail("normal-form witness has no rewriting system");
  if (nf.normal_form.empty()) return Result::fail("normal form is empty");
  if (Result r = rewriting_system(p, *nf.system, limits); !r) return r;
  auto actual = nf.system->normal_form(w.as_string(), limits.max_rewrite_steps);
  if (!actual) return Result::fail("rewrite limit reached");
  if (*actual != nf.normal_form) return Result::fail("stored normal form differs from the word's");
  return {};
}

Result oracle_answer(const Presentation& p, const Word& w, const OracleAnswer& answer,
                     const Limits& limits) {
  if (auto* t = std::get_if<Trivial>(&answer)) return trivial(p, w, t->certificate);
  if (auto* n = std::get_if<Nontrivial>(&answer)) return nontrivial(p, w, n->witness, limits);
  return {};
}

namespace {

// Each letter has a nontrivial image and is the least letter with that image.
bool canonical_letters(const Word& u, const std::vector<Word>& images) {
  std::vector<Word> value;
  for (const Word& v : images) {
    value.push_back(v);
    value.push_back(invert(v));
  }
  for (Letter l : u.letters()) {
    if (value[l.code()].is_identity()) return false;
    for (std::uint32_t c = 0; c < l.code(); ++c) {
      if (value[c] == value[l.code()]) return false;
    }
  }
  return true;
}

}  // namespace

Result epimorphism(const Presentation& g, const EpiCertificate& epi) {
  const GroupHom& phi = epi.phi;
  const std::size_t n = epi.codomain.num_generators();
  if (!(phi.domain == g)) return Result::fail("homomorphism domain differs from the group");
  if (phi.codomain_rank != n) return Result::fail("homomorphism codomain rank differs from the target");
  if (phi.images.size() != g.num_generators()) return Result::fail("wrong number of images");
  for (const Word& w : phi.images) {
    if (!uses_rank_at_most(w, n)) return Result::fail("image uses an unknown target generator");
  }
  if (epi.codomain.num_relators() == 0) {
    for (std::size_t j = 0; j < g.num_relators(); ++j) {
      if (!substitute(g.relator(j), phi.images).is_identity()) {
        return Result::fail("relator " + std::to_string(j) + " does not map to 1");
      }
    }
    if (!epi.hopfian_asserted) return Result::fail("free target must be recorded as Hopfian");
  }
  if (epi.surjectivity_asserted) {
    if (epi.codomain.num_relators() == 0) {
      return Result::fail("surjectivity onto a free target must be proved by preimages");
    }
    return {};
  }
  if (epi.preimages.size() != n) return Result::fail("wrong number of surjection preimages");
  for (std::size_t k = 0; k < n; ++k) {
    if (!uses_rank_at_most(epi.preimages[k], g.num_generators())) {
      return Result::fail("preimage uses an unknown generator");
    }
    if (substitute(epi.preimages[k], phi.images) != Word::generator(static_cast<GeneratorId>(k))) {
      return Result::fail("preimage " + std::to_string(k) + " does not map to its generator");
    }
    if (!canonical_letters(epi.preimages[k], phi.images)) {
      return Result::fail("preimage " + std::to_string(k) + " is not in canonical form");
    }
  }
  return {};
}

namespace {

Result inverse_witness(const Presentation& g, const EpiCertificate& epi,
                       const InverseWitness& inv) {
  const Presentation& h = epi.codomain;
  if (inv.psi_images.size() != h.num_generators()) return Result::fail("wrong number of psi images");
  for (const Word& w : inv.psi_images) {
    if (!uses_rank_at_most(w, g.num_generators())) return Result::fail("psi image uses an unknown generator");
  }
  if (inv.relator_proofs.size() != h.num_relators()) return Result::fail("wrong number of relator proofs");
  for (std::size_t j = 0; j < h.num_relators(); ++j) {
    Word target = substitute(h.relator(j), inv.psi_images);
    if (Result r = trivial(g, target, inv.relator_proofs[j]); !r) {
      return with_context(r, "psi relator " + std::to_string(j));
    }
  }
  if (inv.roundtrip_proofs.size() != g.num_generators()) return Result::fail("wrong number of roundtrip proofs");
  for (std::size_t i = 0; i < g.num_generators(); ++i) {
    Word target = substitute(epi.phi.images[i], inv.psi_images)
                  * Word::generator(static_cast<GeneratorId>(i), -1);
    if (Result r = trivial(g, target, inv.roundtrip_proofs[i]); !r) {
      return with_context(r, "roundtrip " + std::to_string(i));
    }
  }
  return {};
}

Result obstruction(const Presentation& g, const Presentation& target, const Obstruction& ob) {
  const std::size_t m = g.num_generators();
  const std::size_t n = target.num_generators();
  if (target.num_relators() != 0) return Result::fail("obstructions apply to free targets only");
  switch (ob.kind) {
    case ObstructionKind::RankTooLarge:
      if (n <= m) return Result::fail("target rank does not exceed the generator count");
      return {};
    case ObstructionKind::AbelianizationMismatch: {
      AbelianInvariants inv = abelian_invariants(g);
      if (!(inv == ob.invariants)) return Result::fail("stored abelian invariants are wrong");
      if (inv.torsion.empty() && inv.free_rank == n) {
        return Result::fail("abelianization agrees with the target's");
      }
      return {};
    }
    case ObstructionKind::AbelianShortcut: {
      if (n < 2) return Result::fail("abelian groups are free only of rank <= 1");
      if (ob.commutator_proofs.size() != m * (m - (m > 0 ? 1 : 0)) / 2) {
        return Result::fail("wrong number of commutator proofs");
      }
      std::size_t k = 0;
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j, ++k) {
          Word c = commutator(Word::generator(static_cast<GeneratorId>(i)),
                              Word::generator(static_cast<GeneratorId>(j)));
          if (Result r = trivial(g, c, ob.commutator_proofs[k]); !r) {
            return with_context(r, "commutator " + std::to_string(i) + "," + std::to_string(j));
          }
        }
      }
      return {};
    }
    case ObstructionKind::NoEpimorphismFound:
      return Result::fail("a bounded epimorphism search proves nothing");
  }
  return Result::fail("unknown obstruction");
}

Result kernel_witness(const Presentation& g, const EpiCertificate& epi, const KernelWitness& k,
                      const Limits& limits) {
  if (!epi.hopfian_asserted) return Result::fail("kernel witness needs a Hopfian group");
  if (k.word.is_identity()) return Result::fail("kernel word is empty");
  if (Result r = nontrivial(g, k.word, k.nontrivial, limits); !r) return with_context(r, "kernel word");
  Word image = substitute(k.word, epi.phi.images);
  if (epi.codomain.num_relators() == 0) {
    if (k.image_proof) return Result::fail("free target needs no image proof");
    if (!image.is_identity()) return Result::fail("kernel word does not map to 1");
    return {};
  }
  if (!k.image_proof) return Result::fail("missing image proof");
  return with_context(trivial(epi.codomain, image, *k.image_proof), "image");
}

}  // namespace

Result outcome(const Outcome& o, const Limits& limits) {
  if (auto* iso = std::get_if<Isomorphic>(&o.verdict)) {
    if (!(iso->epi.codomain == o.target)) return Result::fail("certificate target differs");
    return check_all({with_context(epimorphism(o.group, iso->epi), "phi"),
                      with_context(inverse_witness(o.group, iso->epi, iso->psi), "psi")});
  }
  if (auto* no = std::get_if<NotIsomorphic>(&o.verdict)) {
    if (auto* ob = std::get_if<Obstruction>(&no->certificate)) {
      return obstruction(o.group, o.target, *ob);
    }
    if (auto* k = std::get_if<KernelWitness>(&no->certificate)) {
      if (!no->epi) return Result::fail("kernel witness without its epimorphism");
      if (!(no->epi->codomain == o.target)) return Result::fail("certificate target differs");
      return check_all({with_context(epimorphism(o.group, *no->epi), "phi"),
                        kernel_witness(o.group, *no->epi, *k, limits)});
    }
    return Result::fail("an inverse witness cannot show non-isomorphism");
  }
  return {};
}

Result embed_outcome(const EmbedOutcome& o, const Limits& limits) {
  const std::size_t m = o.group.num_generators();
  const std::size_t top = o.target_rank >= 2 ? m : std::min(m, o.target_rank);
  if (auto* e = std::get_if<Embeds>(&o.verdict)) {
    if (e->rank > top) return Result::fail("free rank cannot embed in the target");
    if (!is_isomorphic(e->outcome)) return Result::fail("embedding outcome is not an isomorphism");
    if (e->outcome.target.num_generators() != e->rank || e->outcome.target.num_relators() != 0) {
      return Result::fail("embedding rank differs from the outcome's target");
    }
    if (!(e->outcome.group == o.group)) return Result::fail("outcome group differs");
    return with_context(outcome(e->outcome, limits), "rank " + std::to_string(e->rank));
  }
  if (auto* ne = std::get_if<NotEmbeddable>(&o.verdict)) {
    if (ne->per_rank.size() != top + 1) return Result::fail("a candidate rank is not covered");
    for (std::size_t r = 0; r <= top; ++r) {
      const Outcome& sub = ne->per_rank[r];
      if (!is_not_isomorphic(sub)) return Result::fail("rank " + std::to_string(r) + " is not refuted");
      if (sub.target.num_generators() != r || sub.target.num_relators() != 0 || !(sub.group == o.group)) {
        return Result::fail("rank " + std::to_string(r) + " refutes the wrong statement");
      }
      if (Result res = outcome(sub, limits); !res) return with_context(res, "rank " + std::to_string(r));
    }
    return {};
  }
  return {};
}

}  // namespace freeiso::verify
