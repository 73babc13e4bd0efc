#pragma once

#include <string>

#include "freeiso/budget.hpp"
#include "freeiso/conjugate_product.hpp"
#include "freeiso/decision.hpp"
#include "freeiso/presentation.hpp"
#include "freeiso/rewriting.hpp"
#include "freeiso/word_problem.hpp"
#include "freeiso/words.hpp"

// Certificate replay. Nothing here searches: every check recomputes a
// substitution, a free reduction, a Smith form or a rewrite to normal form.
namespace freeiso::verify {

struct Result {
  bool ok = true;
  std::string reason;

  explicit operator bool() const { return ok; }
  static Result fail(std::string why) { return {false, std::move(why)}; }
};

// Limits for rewriting during replay.
struct Limits {
  std::size_t max_rewrite_steps = 1000000;
};

// Each term uses a valid relator, exponent +-1 and a canonical conjugator,
// and the product reduces to w.
Result trivial(const Presentation& p, const Word& w, const ConjugateProduct& proof);

// The witness shows w != 1 in the group of p.
Result nontrivial(const Presentation& p, const Word& w, const NontrivialityWitness& witness,
                  const Limits& limits = {});

// The system is confluent, each rule carries a valid proof, and the relators
// and free cancellations rewrite to the empty word.
Result rewriting_system(const Presentation& p, const RewritingSystem& rs,
                        const Limits& limits = {});

Result oracle_answer(const Presentation& p, const Word& w, const OracleAnswer& answer,
                     const Limits& limits = {});

Result epimorphism(const Presentation& g, const EpiCertificate& epi);

// Definitive outcomes must replay; Inconclusive outcomes are accepted as such.
Result outcome(const Outcome& o, const Limits& limits = {});

Result embed_outcome(const EmbedOutcome& o, const Limits& limits = {});

}  // namespace freeiso::verify
