#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "freeiso/budget.hpp"
#include "freeiso/conjugate_product.hpp"
#include "freeiso/presentation.hpp"
#include "freeiso/rewriting.hpp"
#include "freeiso/words.hpp"

namespace freeiso {

// The exponent vector of a word lies outside the relator lattice.
struct AbelianImage {
  std::vector<Integer> exponents;

  bool operator==(const AbelianImage&) const = default;
};

// The word has a nonempty normal form in a confluent rewriting system for the
// group. The system travels with the witness so it can be re-audited.
struct NormalFormNonEmpty {
  std::shared_ptr<const RewritingSystem> system;
  LetterString normal_form;

  bool operator==(const NormalFormNonEmpty& o) const {
    return normal_form == o.normal_form
           && (system == o.system
               || (system && o.system && system->rules() == o.system->rules()
                   && system->order() == o.system->order()));
  }
};

using NontrivialityWitness = std::variant<AbelianImage, NormalFormNonEmpty>;

struct Trivial {
  ConjugateProduct certificate;
};
struct Nontrivial {
  NontrivialityWitness witness;
};
struct Unknown {
  BudgetReport spent;
};

using OracleAnswer = std::variant<Trivial, Nontrivial, Unknown>;

inline bool is_trivial(const OracleAnswer& a) { return std::holds_alternative<Trivial>(a); }
inline bool is_nontrivial(const OracleAnswer& a) { return std::holds_alternative<Nontrivial>(a); }
inline bool is_unknown(const OracleAnswer& a) { return std::holds_alternative<Unknown>(a); }

// Precomputed conjugate terms for yes_part, reusable across queries with the
// same presentation and budget.
struct YesPartIndex;
std::shared_ptr<const YesPartIndex> make_yes_part_index(const Presentation& p,
                                                        const Budget& b);

// Breadth-first search over products of conjugates of relators (fewest terms
// first; conjugators of length <= max_conjugator_length, canonical in their
// coset). Returns Trivial with a certificate or Unknown.
OracleAnswer yes_part(const Presentation& p, const Word& w, const Budget& b,
                      BudgetReport* report = nullptr);
OracleAnswer yes_part(const Presentation& p, const YesPartIndex& index,
                      const Word& w, const Budget& b, BudgetReport* report = nullptr);

// Nontrivial when the exponent vector of w is outside the relator lattice.
OracleAnswer abelian_no_part(const Presentation& p, const Word& w);

struct RewritingAcceptance {
  std::optional<RewritingSystem> system;  // with rule proofs, on success
  std::string reason;                     // on rejection
};

// Accepts a user-supplied system only if it is confluent, sends every relator
// and every x x^-1, x^-1 x to the empty word, and each rule's sides are equal
// in the group (proved by yes_part).
RewritingAcceptance accept_rewriting_system(const Presentation& p,
                                            const RewritingSystem& rs,
                                            const Budget& b);

// Combines a confluent rewriting system (if any), abelian_no_part and
// yes_part; the first definitive answer wins.
class WordProblemOracle {
 public:
  struct Backends {
    bool rewriting = true;
    bool abelian = true;
    bool yes_part = true;
  };

  WordProblemOracle(Presentation p, Budget b);
  WordProblemOracle(Presentation p, Budget b, std::optional<RewritingSystem> rs,
                    Backends backends);

  const Presentation& presentation() const { return *presentation_; }
  const Budget& budget() const { return budget_; }
  bool is_total() const { return rewriting_ != nullptr && backends_.rewriting; }
  std::shared_ptr<const RewritingSystem> rewriting_system() const { return rewriting_; }

  OracleAnswer query(const Word& w, BudgetReport* report = nullptr) const;

  // Only the backends able to prove nontriviality (rewriting, abelian).
  OracleAnswer query_nontrivial(const Word& w, BudgetReport* report = nullptr) const;

 private:
  std::shared_ptr<const Presentation> presentation_;
  Budget budget_;
  std::shared_ptr<const RewritingSystem> rewriting_;
  std::shared_ptr<const RelatorLattice> lattice_;
  Backends backends_;
  struct LazyIndex;
  std::shared_ptr<LazyIndex> index_;
};

// Runs Knuth-Bendix within the budget and builds an oracle around the result
// (or without a rewriting system if completion gives up).
WordProblemOracle compose_oracle(const Presentation& p, const Budget& b,
                                 std::optional<RewritingSystem> supplied = std::nullopt);

// Words of the group certified nontrivial, in shortlex order up to
// max_word_length. Words the oracle cannot classify are logged.
class NontrivialEnumerator {
 public:
  NontrivialEnumerator(const WordProblemOracle& oracle, const Budget& b);

  struct Item {
    Word word;
    NontrivialityWitness witness;
  };

  std::optional<Item> next(BudgetReport* report = nullptr);
  const std::vector<Word>& skipped() const { return skipped_; }

 private:
  const WordProblemOracle& oracle_;
  WordEnumerator words_;
  std::vector<Word> skipped_;
};

}  // namespace freeiso
