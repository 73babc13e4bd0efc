#include "freeiso/hom_search.hpp"

#include <algorithm>
#include <cassert>

#include "freeiso/error.hpp"

namespace freeiso {

bool is_homomorphism_to_free(const Presentation& p, std::span<const Word> images) {
  if (images.size() != p.num_generators()) {
    throw RankMismatch("expected " + std::to_string(p.num_generators())
                       + " images, got " + std::to_string(images.size()));
  }
  return std::all_of(p.relators().begin(), p.relators().end(),
                     [&](const Word& r) { return substitute(r, images).is_identity(); });
}

GroupHom make_hom(const Presentation& p, std::size_t codomain_rank,
                  std::vector<Word> images) {
  for (const Word& w : images) check_rank(w, codomain_rank);
  bool ok = is_homomorphism_to_free(p, images);
  return GroupHom{p, codomain_rank, std::move(images), ok};
}

namespace {

// Lexicographically least split of `total` into parts of at most `cap`,
// written into parts[from..].
void fill_least(std::vector<std::size_t>& parts, std::size_t from, std::size_t total,
                std::size_t cap) {
  for (std::size_t i = from; i < parts.size(); ++i) {
    std::size_t after = (parts.size() - i - 1) * cap;
    parts[i] = total > after ? total - after : 0;
    total -= parts[i];
  }
}

}  // namespace

TupleEnumerator::TupleEnumerator(std::size_t arity, std::size_t rank,
                                 std::size_t max_component_length)
    : arity_(arity), rank_(rank), max_len_(max_component_length),
      lengths_(arity, 0), words_(arity) {}

bool TupleEnumerator::start_composition() {
  for (std::size_t i = 0; i < arity_; ++i) {
    auto first = first_reduced_of_length(rank_, lengths_[i]);
    if (!first) return false;
    words_[i] = std::move(*first);
  }
  return true;
}

bool TupleEnumerator::next_composition() {
  while (true) {
    bool stepped = false;
    std::size_t suffix = 0;
    for (std::size_t i = arity_; i-- > 0;) {
      if (i + 1 < arity_) {
        suffix += lengths_[i + 1];
        if (suffix > 0 && lengths_[i] < max_len_) {
          ++lengths_[i];
          fill_least(lengths_, i + 1, suffix - 1, max_len_);
          stepped = true;
          break;
        }
      }
    }
    if (!stepped) {
      ++total_;
      if (total_ > arity_ * max_len_) return false;
      fill_least(lengths_, 0, total_, max_len_);
    }
    if (start_composition()) return true;
  }
}

bool TupleEnumerator::advance_words() {
  for (std::size_t i = arity_; i-- > 0;) {
    if (next_reduced_same_length(words_[i], rank_)) return true;
    words_[i] = *first_reduced_of_length(rank_, lengths_[i]);
  }
  return false;
}

std::optional<std::vector<Word>> TupleEnumerator::next() {
  if (done_) return std::nullopt;
  if (!pending_) {
    pending_ = true;
    if (!start_composition() && !next_composition()) {
      done_ = true;
      return std::nullopt;
    }
  } else if (!advance_words() && !next_composition()) {
    done_ = true;
    return std::nullopt;
  }
  ++emitted_;
  std::vector<Word> out;
  out.reserve(arity_);
  for (const auto& w : words_) out.push_back(Word::from_reduced(w));
  return out;
}

EpiSearch::EpiSearch(Presentation p, std::size_t n, const Budget& b)
    : p_(std::move(p)), n_(n), max_tuples_(b.max_tuples),
      tuples_(p_.num_generators(), n, b.max_image_length) {}

EpiSearch::Status EpiSearch::step() {
  if (status_ != Status::Running) return status_;
  if (report_.epi_tuples_tried >= max_tuples_) {
    return status_ = Status::Exhausted;
  }
  auto tuple = tuples_.next();
  if (!tuple) return status_ = Status::Exhausted;
  ++report_.epi_tuples_tried;
  if (!is_homomorphism_to_free(p_, *tuple)) return status_;
  FoldedGraph g = FoldedGraph::build(*tuple, n_);
  if (g.rank() < n_) return status_;
  std::size_t r = g.rank();
  witness_ = EpiWitness{GroupHom{p_, n_, std::move(*tuple), true}, std::move(g), r};
  return status_ = Status::Found;
}

EpiSearchResult search_epi_onto_rank(const Presentation& p, std::size_t n,
                                     const Budget& b) {
  if (n == 0) throw PreconditionError("search_epi_onto_rank needs n >= 1");
  EpiSearch search(p, n, b);
  while (true) {
    switch (search.step()) {
      case EpiSearch::Status::Running: break;
      case EpiSearch::Status::Found: return EpiFound{*search.witness()};
      case EpiSearch::Status::Exhausted: return EpiExhausted{search.report()};
    }
  }
}

namespace {

// Image of each generator as a word in the basis of the image graph, with
// basis letters >= n deleted.
std::vector<Word> retracted_coordinates(const EpiWitness& w, std::size_t n) {
  if (w.image_rank < n) {
    throw PreconditionError("restriction needs image rank >= n");
  }
  std::vector<Word> kill(w.image_rank);
  for (std::size_t j = 0; j < n; ++j) kill[j] = Word::generator(static_cast<GeneratorId>(j));
  std::vector<Word> out;
  for (const Word& a : w.hom.images) {
    auto coords = w.image_graph.express(a);
    assert(coords);
    out.push_back(substitute(*coords, kill));
  }
  return out;
}

}  // namespace

GroupHom restrict_to_rank_n(const EpiWitness& w, std::size_t n) {
  std::vector<Word> coords = retracted_coordinates(w, n);
  const auto& basis = w.image_graph.basis();
  std::vector<Word> images;
  for (const Word& c : coords) {
    images.push_back(substitute(c, std::span<const Word>(basis.data(), n)));
  }
  GroupHom h = make_hom(w.hom.domain, w.hom.codomain_rank, std::move(images));
  assert(h.verified);
  return h;
}

GroupHom epimorphism_onto_free(const EpiWitness& w, std::size_t n) {
  GroupHom h = make_hom(w.hom.domain, n, retracted_coordinates(w, n));
  assert(h.verified);
  return h;
}

Word canonical_preimage(const Word& u, std::span<const Word> images) {
  auto value = [&](Letter l) {
    const Word& v = images[l.gen()];
    return l.is_inverse() ? invert(v) : v;
  };
  LetterString out;
  for (Letter l : u.letters()) {
    Word v = value(l);
    if (v.is_identity()) continue;
    Letter best = l;
    for (std::uint32_t c = 0; c < l.code(); ++c) {
      Letter cand = Letter::from_code(c);
      if (value(cand) == v) {
        best = cand;
        break;
      }
    }
    out.push_back(best);
  }
  return Word::reduce(out);
}

std::vector<Word> surjection_preimages(const EpiWitness& w, std::size_t n) {
  const GroupHom phi = epimorphism_onto_free(w, n);
  std::vector<Word> out;
  for (std::size_t j = 0; j < n; ++j) {
    auto u = w.image_graph.express_in_generators(w.image_graph.basis().at(j));
    assert(u);
    out.push_back(canonical_preimage(*u, phi.images));
  }
  return out;
}

}  // namespace freeiso
