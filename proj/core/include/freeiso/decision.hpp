#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "freeiso/budget.hpp"
#include "freeiso/conjugate_product.hpp"
#include "freeiso/hom_search.hpp"
#include "freeiso/presentation.hpp"
#include "freeiso/scheduler.hpp"
#include "freeiso/word_problem.hpp"

namespace freeiso {

// A homomorphism G -> H with the evidence that it is onto. For a free H the
// evidence is a preimage of every generator; for a presented H the caller
// asserts surjectivity (preimages empty, surjectivity_asserted set).
struct EpiCertificate {
  GroupHom phi;
  Presentation codomain;
  std::vector<Word> preimages;
  bool surjectivity_asserted = false;
  bool hopfian_asserted = false;

  bool operator==(const EpiCertificate&) const = default;
};

// A word of G certified nontrivial whose image in H is trivial. image_proof is
// empty for a free codomain, where the substitution itself reduces to 1.
struct KernelWitness {
  Word word;
  NontrivialityWitness nontrivial;
  std::optional<ConjugateProduct> image_proof;
};

// psi: H -> G given on generators, with proofs that psi kills every relator of
// H and that psi(phi(g_i)) g_i^-1 is trivial in G for every i.
struct InverseWitness {
  std::vector<Word> psi_images;
  std::vector<ConjugateProduct> relator_proofs;
  std::vector<ConjugateProduct> roundtrip_proofs;

  bool operator==(const InverseWitness&) const = default;
};

enum class ObstructionKind {
  RankTooLarge,
  AbelianizationMismatch,
  AbelianShortcut,
  NoEpimorphismFound,
};

struct Obstruction {
  ObstructionKind kind = ObstructionKind::RankTooLarge;
  AbelianInvariants invariants;                    // AbelianizationMismatch
  std::vector<ConjugateProduct> commutator_proofs;  // AbelianShortcut, pairs i<j in order
  bool exhaustive = false;                         // NoEpimorphismFound

  bool operator==(const Obstruction&) const = default;
};

using Certificate = std::variant<KernelWitness, InverseWitness, Obstruction>;

struct Isomorphic {
  EpiCertificate epi;
  InverseWitness psi;
};
struct NotIsomorphic {
  Certificate certificate;
  std::optional<EpiCertificate> epi;  // set for a kernel witness
};
struct Inconclusive {
  std::string reason;
  std::optional<KernelWitness> kernel;  // found without a Hopfian assertion
  std::optional<EpiCertificate> epi;
};

using Verdict = std::variant<Isomorphic, NotIsomorphic, Inconclusive>;

// The verdict on "G is isomorphic to the target", where the target is the
// free group of rank `target_rank` (or `target` when presented).
struct Outcome {
  Presentation group;
  Presentation target;
  Verdict verdict;
  BudgetReport report;
};

inline bool is_isomorphic(const Outcome& o) { return std::holds_alternative<Isomorphic>(o.verdict); }
inline bool is_not_isomorphic(const Outcome& o) { return std::holds_alternative<NotIsomorphic>(o.verdict); }
inline bool is_inconclusive(const Outcome& o) { return std::holds_alternative<Inconclusive>(o.verdict); }

// Searches the certified-nontrivial words of G for one that phi kills.
class AlgorithmA : public Procedure {
 public:
  // h_oracle is required when epi.codomain has relators.
  AlgorithmA(const WordProblemOracle& g_oracle, const WordProblemOracle* h_oracle,
             EpiCertificate epi, const Budget& b);

  StepStatus step() override;
  BudgetReport report() const override { return report_; }
  const std::optional<KernelWitness>& result() const { return result_; }
  const std::vector<Word>& skipped() const { return skipped_; }

 private:
  const WordProblemOracle& g_;
  const WordProblemOracle* h_;
  EpiCertificate epi_;
  WordEnumerator words_;
  std::optional<KernelWitness> result_;
  std::vector<Word> skipped_;
  BudgetReport report_;
  StepStatus status_ = StepStatus::Running;
};

// Searches tuples of G-words for an inverse psi of phi.
class AlgorithmB : public Procedure {
 public:
  AlgorithmB(const WordProblemOracle& g_oracle, EpiCertificate epi, const Budget& b);

  StepStatus step() override;
  BudgetReport report() const override { return report_; }
  const std::optional<InverseWitness>& result() const { return result_; }

 private:
  std::optional<ConjugateProduct> prove_trivial(const Word& w);

  const WordProblemOracle& g_;
  EpiCertificate epi_;
  std::size_t max_tuples_;
  TupleEnumerator tuples_;
  std::optional<InverseWitness> result_;
  BudgetReport report_;
  StepStatus status_ = StepStatus::Running;
};

// Dovetails A and B. Succeeds with a definitive verdict; Exhausted leaves an
// Inconclusive outcome.
class IsoWithEpi : public Procedure {
 public:
  IsoWithEpi(const WordProblemOracle& g_oracle, const WordProblemOracle* h_oracle,
             EpiCertificate epi, const Budget& b);
  IsoWithEpi(const IsoWithEpi&) = delete;
  IsoWithEpi& operator=(const IsoWithEpi&) = delete;

  StepStatus step() override;
  BudgetReport report() const override { return interleaver_.report(); }
  Outcome outcome() const;

 private:
  EpiCertificate epi_;
  AlgorithmA a_;
  AlgorithmB b_;
  Interleaver interleaver_;
};

Outcome decide_iso_with_epi(const WordProblemOracle& g_oracle,
                            const WordProblemOracle* h_oracle, EpiCertificate epi,
                            const Budget& b);

// The full pipeline for "G is free of rank n" as a resumable procedure.
// step() returns Succeeded once the outcome is definitive and Exhausted once
// it is Inconclusive.
class DecideFree : public Procedure {
 public:
  DecideFree(const WordProblemOracle& oracle, std::size_t n, const Budget& b);

  StepStatus step() override;
  BudgetReport report() const override;
  const std::optional<Outcome>& outcome() const { return outcome_; }

 private:
  StepStatus finish(Verdict v);
  StepStatus start();

  const WordProblemOracle& oracle_;
  std::size_t n_;
  Budget budget_;
  BudgetReport own_;
  std::optional<EpiSearch> search_;
  std::unique_ptr<IsoWithEpi> iso_;
  std::optional<Outcome> outcome_;
  StepStatus status_ = StepStatus::Running;
  bool started_ = false;
};

Outcome decide_free(const WordProblemOracle& oracle, std::size_t n, const Budget& b);

struct Embeds {
  std::size_t rank = 0;
  Outcome outcome;
};
struct NotEmbeddable {
  std::vector<Outcome> per_rank;  // index = rank
};
struct EmbedInconclusive {
  std::vector<Outcome> per_rank;
};

struct EmbedOutcome {
  Presentation group;
  std::size_t target_rank = 0;
  std::variant<Embeds, NotEmbeddable, EmbedInconclusive> verdict;
  BudgetReport report;
};

// Every subgroup of F_n is free, and F_n contains F_r for all r when n >= 2,
// so G embeds iff G is free of some rank r <= m. For n = 1 only r <= 1 are
// candidates. The candidate ranks are dovetailed.
EmbedOutcome embeds_in_free(const WordProblemOracle& oracle, std::size_t n,
                            const Budget& b, std::size_t workers = 1);

}  // namespace freeiso
