#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "freeiso/budget.hpp"
#include "freeiso/conjugate_product.hpp"
#include "freeiso/presentation.hpp"
#include "freeiso/words.hpp"

namespace freeiso {

// lhs -> rhs over the doubled alphabet (generators and formal inverses).
// When present, `proof` shows lhs * rhs^-1 is trivial in the presented group.
struct RewriteRule {
  LetterString lhs;
  LetterString rhs;
  std::optional<ConjugateProduct> proof;

  bool operator==(const RewriteRule&) const = default;
};

// A string rewriting system ordered by shortlex over a fixed letter order.
// Construction rejects any rule whose lhs is empty or not shortlex-greater
// than its rhs, so rewriting always terminates.
class RewritingSystem {
 public:
  RewritingSystem() = default;
  RewritingSystem(std::size_t num_generators, std::vector<Letter> order,
                  std::vector<RewriteRule> rules);

  // x_1 < x_1^-1 < x_2 < ...
  static std::vector<Letter> default_order(std::size_t num_generators);

  std::size_t num_generators() const { return num_generators_; }
  const std::vector<Letter>& order() const { return order_; }
  const std::vector<RewriteRule>& rules() const { return rules_; }
  bool has_proofs() const;

  bool less(const LetterString& a, const LetterString& b) const;

  // Stable identifier derived from the order and rules.
  std::string id() const;

  // Normal form, or nullopt if more than max_steps rewrites were needed.
  std::optional<LetterString> normal_form(const LetterString& s,
                                          std::size_t max_steps) const;

  struct Trace {
    LetterString normal_form;
    ConjugateProduct proof;  // evaluates to s * normal_form^-1
  };

  // Normal form together with a certificate assembled from rule proofs.
  // Requires has_proofs().
  std::optional<Trace> normal_form_with_proof(const Presentation& p,
                                              const LetterString& s,
                                              std::size_t max_steps) const;

  RewritingSystem with_rules(std::vector<RewriteRule> rules) const;

 private:
  std::size_t num_generators_ = 0;
  std::vector<Letter> order_;
  std::vector<std::size_t> rank_of_code_;
  std::vector<RewriteRule> rules_;
};

struct ConfluenceResult {
  enum class Status { Confluent, CriticalPairFailure, Unknown };
  Status status = Status::Unknown;
  // On failure: the overlap word and its two distinct normal forms.
  LetterString overlap;
  LetterString left;
  LetterString right;
};

// Resolves every overlap and containment critical pair.
ConfluenceResult check_confluence(const RewritingSystem& rs, const Budget& b);

struct CompletionResult {
  std::optional<RewritingSystem> system;  // set on success
  std::size_t rules_added = 0;
  std::string stop_reason;                // set on failure
};

// Shortlex Knuth-Bendix completion of the monoid presentation
// {x x^-1 = 1, x^-1 x = 1, r_j = 1}. Every rule of a returned system carries a
// proof; the system is reduced and sorted by lhs.
CompletionResult knuth_bendix(const Presentation& p, const Budget& b);

LetterString to_letter_string(const Word& w);

}  // namespace freeiso
