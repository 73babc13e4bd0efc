#include "freeiso/decision.hpp"

#include "freeiso/error.hpp"

namespace freeiso {

namespace {

constexpr std::size_t kSkippedSample = 32;

bool is_free_codomain(const EpiCertificate& e) { return e.codomain.num_relators() == 0; }

Word generator_inverse(std::size_t i) {
  return Word::generator(static_cast<GeneratorId>(i), -1);
}

}  // namespace

AlgorithmA::AlgorithmA(const WordProblemOracle& g_oracle, const WordProblemOracle* h_oracle,
                       EpiCertificate epi, const Budget& b)
    : g_(g_oracle), h_(h_oracle), epi_(std::move(epi)),
      words_(g_oracle.presentation().num_generators(), b.max_word_length) {
  if (!is_free_codomain(epi_) && !h_) {
    throw PreconditionError("a presented codomain needs its own oracle");
  }
}

StepStatus AlgorithmA::step() {
  if (status_ != StepStatus::Running) return status_;
  auto w = words_.next();
  if (!w) return status_ = StepStatus::Exhausted;
  if (w->is_identity()) return status_;
  ++report_.words_enumerated;

  Word image = substitute(*w, epi_.phi.images);
  std::optional<ConjugateProduct> image_proof;
  if (is_free_codomain(epi_)) {
    if (!image.is_identity()) return status_;
  } else {
    OracleAnswer a = h_->query(image, &report_);
    if (!is_trivial(a)) return status_;
    image_proof = std::get<Trivial>(a).certificate;
  }

  OracleAnswer a = g_.query_nontrivial(*w, &report_);
  if (auto* nt = std::get_if<Nontrivial>(&a)) {
    result_ = KernelWitness{std::move(*w), std::move(nt->witness), std::move(image_proof)};
    return status_ = StepStatus::Succeeded;
  }
  if (is_unknown(a)) {
    ++report_.skipped_unknown;
    if (skipped_.size() < kSkippedSample) skipped_.push_back(std::move(*w));
  }
  return status_;
}

AlgorithmB::AlgorithmB(const WordProblemOracle& g_oracle, EpiCertificate epi, const Budget& b)
    : g_(g_oracle), epi_(std::move(epi)), max_tuples_(b.max_tuples),
      tuples_(epi_.codomain.num_generators(), g_oracle.presentation().num_generators(),
              b.max_image_length) {}

std::optional<ConjugateProduct> AlgorithmB::prove_trivial(const Word& w) {
  if (w.is_identity()) return ConjugateProduct{};
  OracleAnswer a = g_.query(w, &report_);
  if (auto* t = std::get_if<Trivial>(&a)) return std::move(t->certificate);
  return std::nullopt;
}

StepStatus AlgorithmB::step() {
  if (status_ != StepStatus::Running) return status_;
  if (report_.psi_tuples_tried >= max_tuples_) return status_ = StepStatus::Exhausted;
  auto psi = tuples_.next();
  if (!psi) return status_ = StepStatus::Exhausted;
  ++report_.psi_tuples_tried;

  InverseWitness inv;
  for (std::size_t i = 0; i < epi_.phi.images.size(); ++i) {
    Word w = substitute(epi_.phi.images[i], *psi) * generator_inverse(i);
    auto proof = prove_trivial(w);
    if (!proof) return status_;
    inv.roundtrip_proofs.push_back(std::move(*proof));
  }
  for (const Word& rho : epi_.codomain.relators()) {
    auto proof = prove_trivial(substitute(rho, *psi));
    if (!proof) return status_;
    inv.relator_proofs.push_back(std::move(*proof));
  }
  inv.psi_images = std::move(*psi);
  result_ = std::move(inv);
  return status_ = StepStatus::Succeeded;
}

IsoWithEpi::IsoWithEpi(const WordProblemOracle& g_oracle, const WordProblemOracle* h_oracle,
                       EpiCertificate epi, const Budget& b)
    : epi_(epi),
      a_(g_oracle, h_oracle, epi, b),
      b_(g_oracle, epi, b),
      interleaver_({&a_, &b_}, b.quantum) {}

StepStatus IsoWithEpi::step() {
  StepStatus s = interleaver_.step();
  if (s == StepStatus::Succeeded && interleaver_.winner() == 0 && !epi_.hopfian_asserted) {
    return StepStatus::Exhausted;
  }
  return s;
}

Outcome IsoWithEpi::outcome() const {
  const Presentation& g = epi_.phi.domain;
  Outcome o{g, epi_.codomain, Inconclusive{}, report()};
  if (interleaver_.winner() == 0) {
    if (epi_.hopfian_asserted) {
      o.verdict = NotIsomorphic{*a_.result(), epi_};
    } else {
      o.verdict = Inconclusive{"kernel element found but neither group is asserted Hopfian",
                               a_.result(), epi_};
    }
  } else if (interleaver_.winner() == 1) {
    o.verdict = Isomorphic{epi_, *b_.result()};
  } else {
    o.verdict = Inconclusive{"kernel search and inverse search both exhausted their budgets",
                             std::nullopt, epi_};
  }
  return o;
}

Outcome decide_iso_with_epi(const WordProblemOracle& g_oracle,
                            const WordProblemOracle* h_oracle, EpiCertificate epi,
                            const Budget& b) {
  IsoWithEpi proc(g_oracle, h_oracle, std::move(epi), b);
  while (proc.step() == StepStatus::Running) {
  }
  return proc.outcome();
}

DecideFree::DecideFree(const WordProblemOracle& oracle, std::size_t n, const Budget& b)
    : oracle_(oracle), n_(n), budget_(b) {}

BudgetReport DecideFree::report() const {
  BudgetReport r = own_;
  if (search_) r += search_->report();
  if (iso_) r += iso_->report();
  return r;
}

StepStatus DecideFree::finish(Verdict v) {
  bool inconclusive = std::holds_alternative<Inconclusive>(v);
  outcome_ = Outcome{oracle_.presentation(), Presentation::free(n_), std::move(v), report()};
  return status_ = inconclusive ? StepStatus::Exhausted : StepStatus::Succeeded;
}

StepStatus DecideFree::start() {
  const Presentation& g = oracle_.presentation();
  const std::size_t m = g.num_generators();
  if (n_ > m) {
    return finish(NotIsomorphic{Obstruction{ObstructionKind::RankTooLarge, {}, {}, false}, {}});
  }
  FilterResult filter = free_rank_filter(g, n_);
  if (!filter.pass) {
    return finish(NotIsomorphic{
        Obstruction{ObstructionKind::AbelianizationMismatch, filter.invariants, {}, false}, {}});
  }
  if (n_ >= 2) {
    std::vector<ConjugateProduct> proofs;
    bool abelian = true;
    for (std::size_t i = 0; i < m && abelian; ++i) {
      for (std::size_t j = i + 1; j < m && abelian; ++j) {
        Word c = commutator(Word::generator(static_cast<GeneratorId>(i)),
                            Word::generator(static_cast<GeneratorId>(j)));
        OracleAnswer a = oracle_.query(c, &own_);
        if (auto* t = std::get_if<Trivial>(&a)) {
          proofs.push_back(std::move(t->certificate));
        } else {
          abelian = false;
        }
      }
    }
    if (abelian) {
      return finish(NotIsomorphic{
          Obstruction{ObstructionKind::AbelianShortcut, {}, std::move(proofs), false}, {}});
    }
  }
  if (n_ == 0) {
    EpiCertificate epi{make_hom(g, 0, std::vector<Word>(m)), Presentation::free(0), {},
                       false, true};
    iso_ = std::make_unique<IsoWithEpi>(oracle_, nullptr, std::move(epi), budget_);
  } else {
    search_.emplace(g, n_, budget_);
  }
  return status_;
}

StepStatus DecideFree::step() {
  if (status_ != StepStatus::Running) return status_;
  if (!started_) {
    started_ = true;
    return start();
  }
  if (!iso_) {
    switch (search_->step()) {
      case EpiSearch::Status::Running:
        return status_;
      case EpiSearch::Status::Exhausted:
        return finish(Inconclusive{
            "no epimorphism onto a free subgroup of rank " + std::to_string(n_)
                + " found within the tuple budget",
            std::nullopt, std::nullopt});
      case EpiSearch::Status::Found: {
        const EpiWitness& w = *search_->witness();
        EpiCertificate epi{epimorphism_onto_free(w, n_), Presentation::free(n_),
                           surjection_preimages(w, n_), false, true};
        iso_ = std::make_unique<IsoWithEpi>(oracle_, nullptr, std::move(epi), budget_);
        return status_;
      }
    }
  }
  StepStatus s = iso_->step();
  if (s == StepStatus::Running) return status_;
  Outcome o = iso_->outcome();
  return finish(std::move(o.verdict));
}

Outcome decide_free(const WordProblemOracle& oracle, std::size_t n, const Budget& b) {
  DecideFree proc(oracle, n, b);
  while (proc.step() == StepStatus::Running) {
  }
  return *proc.outcome();
}

namespace {

// Succeeds only when its rank yields Isomorphic; any other verdict retires it.
class EmbedRank : public Procedure {
 public:
  EmbedRank(const WordProblemOracle& oracle, std::size_t r, const Budget& b)
      : inner_(oracle, r, b) {}

  StepStatus step() override {
    StepStatus s = inner_.step();
    if (s == StepStatus::Succeeded && !is_isomorphic(*inner_.outcome())) {
      return StepStatus::Exhausted;
    }
    return s;
  }
  BudgetReport report() const override { return inner_.report(); }
  const std::optional<Outcome>& outcome() const { return inner_.outcome(); }

 private:
  DecideFree inner_;
};

}  // namespace

EmbedOutcome embeds_in_free(const WordProblemOracle& oracle, std::size_t n,
                            const Budget& b, std::size_t workers) {
  const std::size_t m = oracle.presentation().num_generators();
  const std::size_t top = n >= 2 ? m : std::min(m, n);
  std::vector<std::unique_ptr<EmbedRank>> ranks;
  std::vector<Procedure*> procs;
  for (std::size_t r = 0; r <= top; ++r) {
    ranks.push_back(std::make_unique<EmbedRank>(oracle, r, b));
    procs.push_back(ranks.back().get());
  }
  InterleaveResult run = run_interleaved(procs, b.quantum, workers);

  EmbedOutcome out{oracle.presentation(), n, NotEmbeddable{}, {}};
  for (const auto& r : run.reports) out.report += r;
  out.report.scheduler_steps += run.steps;
  if (run.winner) {
    out.verdict = Embeds{*run.winner, *ranks[*run.winner]->outcome()};
    return out;
  }
  std::vector<Outcome> per_rank;
  bool all_refuted = true;
  for (const auto& r : ranks) {
    per_rank.push_back(*r->outcome());
    all_refuted = all_refuted && is_not_isomorphic(per_rank.back());
  }
  if (all_refuted) {
    out.verdict = NotEmbeddable{std::move(per_rank)};
  } else {
    out.verdict = EmbedInconclusive{std::move(per_rank)};
  }
  return out;
}

}  // namespace freeiso
