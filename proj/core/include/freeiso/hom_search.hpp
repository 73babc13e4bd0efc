#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "freeiso/budget.hpp"
#include "freeiso/presentation.hpp"
#include "freeiso/stallings.hpp"
#include "freeiso/words.hpp"

namespace freeiso {

// A map from the generators of `domain` to words of F_{codomain_rank}.
struct GroupHom {
  Presentation domain;
  std::size_t codomain_rank = 0;
  std::vector<Word> images;
  bool verified = false;

  bool operator==(const GroupHom&) const = default;
};

// True iff every relator of p substitutes to the empty word.
// Throws RankMismatch unless images.size() == p.num_generators().
bool is_homomorphism_to_free(const Presentation& p, std::span<const Word> images);

GroupHom make_hom(const Presentation& p, std::size_t codomain_rank,
                  std::vector<Word> images);

// Tuples of `arity` words over `rank` generators, each of length at most
// max_component_length, ordered by total length and then component by
// component in shortlex order.
class TupleEnumerator {
 public:
  TupleEnumerator(std::size_t arity, std::size_t rank, std::size_t max_component_length);

  std::optional<std::vector<Word>> next();
  std::size_t emitted() const { return emitted_; }

 private:
  bool next_composition();
  bool start_composition();
  bool advance_words();

  std::size_t arity_;
  std::size_t rank_;
  std::size_t max_len_;
  std::size_t total_ = 0;
  std::vector<std::size_t> lengths_;
  std::vector<LetterString> words_;
  bool pending_ = false;
  bool done_ = false;
  std::size_t emitted_ = 0;
};

struct EpiWitness {
  GroupHom hom;
  FoldedGraph image_graph;
  std::size_t image_rank = 0;
};

struct EpiFound {
  EpiWitness witness;
};
struct EpiExhausted {
  BudgetReport report;
};
using EpiSearchResult = std::variant<EpiFound, EpiExhausted>;

// Resumable form of search_epi_onto_rank: each step examines one tuple.
class EpiSearch {
 public:
  EpiSearch(Presentation p, std::size_t n, const Budget& b);

  enum class Status { Running, Found, Exhausted };
  Status step();

  const std::optional<EpiWitness>& witness() const { return witness_; }
  const BudgetReport& report() const { return report_; }

 private:
  Presentation p_;
  std::size_t n_;
  std::size_t max_tuples_;
  TupleEnumerator tuples_;
  std::optional<EpiWitness> witness_;
  BudgetReport report_;
  Status status_ = Status::Running;
};

// First tuple in enumeration order that solves the relator equations and
// generates a subgroup of rank >= n.
EpiSearchResult search_epi_onto_rank(const Presentation& p, std::size_t n,
                                     const Budget& b);

// Composes the witness with the retraction of its image onto the span of the
// first n basis elements.
GroupHom restrict_to_rank_n(const EpiWitness& w, std::size_t n);

// The same map written in basis coordinates: an epimorphism onto F_n whose
// image of g_i is the retracted image of g_i as a word in b_1..b_n.
GroupHom epimorphism_onto_free(const EpiWitness& w, std::size_t n);

// Words u_k in the domain generators with epimorphism_onto_free(w, n)(u_k) = x_k,
// in canonical form.
std::vector<Word> surjection_preimages(const EpiWitness& w, std::size_t n);

// u with every letter replaced by the least letter of the same image and
// letters of trivial image removed, then freely reduced. The image of u is
// unchanged.
Word canonical_preimage(const Word& u, std::span<const Word> images);

}  // namespace freeiso
