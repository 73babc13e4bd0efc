#include "freeiso/word_problem.hpp"

#include <unordered_map>
#include <unordered_set>

#include "freeiso/error.hpp"

namespace freeiso {

struct YesPartIndex {
  std::vector<ConjugateTerm> terms;
  std::vector<Word> inverse_values;
  std::unordered_map<Word, std::size_t, WordHash> single;
  std::unordered_map<Word, std::pair<std::size_t, std::size_t>, WordHash> pairs;
  bool has_pairs = false;

  YesPartIndex(const Presentation& p, const Budget& b) {
    if (p.num_relators() == 0) return;
    WordEnumerator conjugators(p.num_generators(), b.max_conjugator_length);
    while (auto c = conjugators.next()) {
      for (std::size_t j = 0; j < p.num_relators(); ++j) {
        if (!is_canonical_conjugator(p, j, *c)) continue;
        for (int e : {1, -1}) {
          ConjugateTerm t{*c, j, e};
          Word v = term_value(p, t);
          if (single.emplace(v, terms.size()).second) {
            terms.push_back(t);
            inverse_values.push_back(invert(v));
          }
        }
      }
    }
    if (terms.size() * terms.size() <= b.max_search_states) {
      has_pairs = true;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        Word vi = invert(inverse_values[i]);
        for (std::size_t k = 0; k < terms.size(); ++k) {
          pairs.emplace(vi * invert(inverse_values[k]), std::make_pair(i, k));
        }
      }
    }
  }
};

std::shared_ptr<const YesPartIndex> make_yes_part_index(const Presentation& p,
                                                        const Budget& b) {
  return std::make_shared<const YesPartIndex>(p, b);
}

namespace {

struct SearchState {
  Word residual;
  std::size_t parent;
  std::size_t term;  // applied to the parent's residual
};

}  // namespace

OracleAnswer yes_part(const Presentation& p, const Word& w, const Budget& b,
                      BudgetReport* report) {
  check_rank(w, p.num_generators());
  if (w.is_identity()) return Trivial{};
  return yes_part(p, YesPartIndex(p, b), w, b, report);
}

OracleAnswer yes_part(const Presentation& p, const YesPartIndex& index,
                      const Word& w, const Budget& b, BudgetReport* report) {
  check_rank(w, p.num_generators());
  BudgetReport local;
  BudgetReport& rep = report ? *report : local;
  if (w.is_identity()) {
    return Trivial{};
  }
  if (b.max_certificate_terms == 0 || p.num_relators() == 0) {
    return Unknown{rep};
  }
  const std::size_t max_terms = b.max_certificate_terms;

  std::vector<SearchState> states{{w, SIZE_MAX, SIZE_MAX}};
  std::vector<std::size_t> layer_begin{0, 1};  // layer d = [begin[d], begin[d+1])
  std::unordered_set<Word, WordHash> visited{w};

  auto certificate = [&](std::size_t state, std::vector<std::size_t> tail) {
    ConjugateProduct cp;
    for (std::size_t t : tail) cp.terms.push_back(index.terms[t]);
    for (std::size_t s = state; states[s].parent != SIZE_MAX; s = states[s].parent) {
      cp.terms.push_back(index.terms[states[s].term]);
    }
    return cp;
  };

  // Builds layer d+1 from layer d; false when the state budget is exceeded.
  auto expand = [&]() -> bool {
    const std::size_t d = layer_begin.size() - 2;
    const std::size_t begin = layer_begin[d];
    const std::size_t end = layer_begin[d + 1];
    for (std::size_t s = begin; s < end; ++s) {
      for (std::size_t t = 0; t < index.terms.size(); ++t) {
        ++rep.certificate_terms_searched;
        Word next = states[s].residual * index.inverse_values[t];
        if (visited.insert(next).second) {
          if (states.size() >= b.max_search_states) return false;
          states.push_back({std::move(next), s, t});
        }
      }
    }
    layer_begin.push_back(states.size());
    return true;
  };

  ++rep.certificate_terms_searched;
  if (auto it = index.single.find(w); it != index.single.end()) {
    return Trivial{certificate(0, {it->second})};
  }
  for (std::size_t k = 2; k <= max_terms; ++k) {
    const std::size_t depth = index.has_pairs ? k - 2 : k - 1;
    while (layer_begin.size() - 1 <= depth) {
      if (!expand()) return Unknown{rep};
    }
    for (std::size_t s = layer_begin[depth]; s < layer_begin[depth + 1]; ++s) {
      const Word& u = states[s].residual;
      ++rep.certificate_terms_searched;
      if (index.has_pairs) {
        if (auto it = index.pairs.find(u); it != index.pairs.end()) {
          return Trivial{certificate(s, {it->second.first, it->second.second})};
        }
      } else if (auto it = index.single.find(u); it != index.single.end()) {
        return Trivial{certificate(s, {it->second})};
      }
    }
  }
  return Unknown{rep};
}

OracleAnswer abelian_no_part(const Presentation& p, const Word& w) {
  auto v = to_integers(exponent_sums(w, p.num_generators()));
  if (RelatorLattice(p).contains(v)) {
    return Unknown{};
  }
  return Nontrivial{AbelianImage{std::move(v)}};
}

RewritingAcceptance accept_rewriting_system(const Presentation& p,
                                            const RewritingSystem& rs,
                                            const Budget& b) {
  RewritingAcceptance out;
  if (rs.num_generators() != p.num_generators()) {
    out.reason = "generator count differs from the presentation";
    return out;
  }
  ConfluenceResult conf = check_confluence(rs, b);
  if (conf.status != ConfluenceResult::Status::Confluent) {
    out.reason = conf.status == ConfluenceResult::Status::Unknown
                     ? "confluence check exceeded the rewrite budget"
                     : "not confluent: a critical pair has two normal forms";
    return out;
  }
  auto reduces_to_identity = [&](const LetterString& s) {
    auto nf = rs.normal_form(s, b.max_rewrite_steps);
    return nf && nf->empty();
  };
  for (GeneratorId g = 0; g < p.num_generators(); ++g) {
    Letter x(g, 1);
    if (!reduces_to_identity({x, x.inverse()}) || !reduces_to_identity({x.inverse(), x})) {
      out.reason = "free cancellation of generator " + std::to_string(g)
                   + " does not rewrite to the empty word";
      return out;
    }
  }
  for (std::size_t j = 0; j < p.num_relators(); ++j) {
    if (!reduces_to_identity(to_letter_string(p.relator(j)))) {
      out.reason = "relator " + std::to_string(j) + " does not rewrite to the empty word";
      return out;
    }
  }
  std::vector<RewriteRule> rules = rs.rules();
  std::shared_ptr<const YesPartIndex> index;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    RewriteRule& r = rules[i];
    Word target = Word::reduce(r.lhs) * invert(Word::reduce(r.rhs));
    if (r.proof && evaluate(p, *r.proof) == target) continue;
    if (!index) index = make_yes_part_index(p, b);
    OracleAnswer a = yes_part(p, *index, target, b);
    if (!is_trivial(a)) {
      out.reason = "rule " + std::to_string(i)
                   + ": sides not shown equal in the group within budget";
      return out;
    }
    r.proof = std::get<Trivial>(a).certificate;
  }
  out.system = rs.with_rules(std::move(rules));
  return out;
}

struct WordProblemOracle::LazyIndex {
  std::once_flag once;
  std::shared_ptr<const YesPartIndex> index;
};

WordProblemOracle::WordProblemOracle(Presentation p, Budget b)
    : WordProblemOracle(std::move(p), b, std::nullopt, Backends{}) {}

WordProblemOracle::WordProblemOracle(Presentation p, Budget b,
                                     std::optional<RewritingSystem> rs,
                                     Backends backends)
    : presentation_(std::make_shared<const Presentation>(std::move(p))),
      budget_(b),
      lattice_(std::make_shared<const RelatorLattice>(*presentation_)),
      backends_(backends),
      index_(std::make_shared<LazyIndex>()) {
  if (rs) {
    if (!rs->has_proofs()) {
      throw PreconditionError("oracle rewriting system must carry rule proofs");
    }
    rewriting_ = std::make_shared<const RewritingSystem>(std::move(*rs));
  }
}

OracleAnswer WordProblemOracle::query_nontrivial(const Word& w,
                                                 BudgetReport* report) const {
  check_rank(w, presentation_->num_generators());
  if (report) ++report->oracle_queries;
  if (rewriting_ && backends_.rewriting) {
    auto trace = rewriting_->normal_form_with_proof(
        *presentation_, to_letter_string(w), budget_.max_rewrite_steps);
    if (trace) {
      if (trace->normal_form.empty()) {
        return Trivial{std::move(trace->proof)};
      }
      return Nontrivial{NormalFormNonEmpty{rewriting_, std::move(trace->normal_form)}};
    }
  }
  if (backends_.abelian) {
    auto v = to_integers(exponent_sums(w, presentation_->num_generators()));
    if (!lattice_->contains(v)) {
      return Nontrivial{AbelianImage{std::move(v)}};
    }
  }
  return Unknown{report ? *report : BudgetReport{}};
}

OracleAnswer WordProblemOracle::query(const Word& w, BudgetReport* report) const {
  if (w.is_identity()) {
    if (report) ++report->oracle_queries;
    return Trivial{};
  }
  OracleAnswer a = query_nontrivial(w, report);
  if (!is_unknown(a) || !backends_.yes_part) {
    return a;
  }
  std::call_once(index_->once, [&] {
    index_->index = make_yes_part_index(*presentation_, budget_);
  });
  return yes_part(*presentation_, *index_->index, w, budget_, report);
}

WordProblemOracle compose_oracle(const Presentation& p, const Budget& b,
                                 std::optional<RewritingSystem> supplied) {
  if (supplied) {
    RewritingAcceptance acc = accept_rewriting_system(p, *supplied, b);
    if (!acc.system) {
      throw PreconditionError("rewriting system rejected: " + acc.reason);
    }
    return WordProblemOracle(p, b, std::move(acc.system), {});
  }
  CompletionResult kb = knuth_bendix(p, b);
  return WordProblemOracle(p, b, std::move(kb.system), {});
}

NontrivialEnumerator::NontrivialEnumerator(const WordProblemOracle& oracle,
                                           const Budget& b)
    : oracle_(oracle),
      words_(oracle.presentation().num_generators(), b.max_word_length) {}

std::optional<NontrivialEnumerator::Item> NontrivialEnumerator::next(
    BudgetReport* report) {
  while (auto w = words_.next()) {
    if (w->is_identity()) continue;
    if (report) ++report->words_enumerated;
    OracleAnswer a = oracle_.query(*w, report);
    if (auto* nt = std::get_if<Nontrivial>(&a)) {
      return Item{std::move(*w), std::move(nt->witness)};
    }
    if (is_unknown(a)) {
      if (report) ++report->skipped_unknown;
      skipped_.push_back(std::move(*w));
    }
  }
  return std::nullopt;
}

}  // namespace freeiso
