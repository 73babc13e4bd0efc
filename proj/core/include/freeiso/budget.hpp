#pragma once

#include <cstddef>
#include <cstdint>

namespace freeiso {

// Limits that turn every semi-decision procedure into a finite run.
struct Budget {
  std::size_t max_certificate_terms = 4;   // conjugates per yes-part certificate
  std::size_t max_conjugator_length = 2;
  std::size_t max_search_states = 100000;  // residual words per yes-part query
  std::size_t max_word_length = 6;         // kernel-element enumeration
  std::size_t max_image_length = 2;        // per-component length of phi / psi tuples
  std::size_t max_tuples = 100000;
  std::size_t kb_max_rules = 128;
  std::size_t kb_max_rule_length = 24;
  std::size_t max_rewrite_steps = 1000000;
  std::size_t quantum = 1;                 // scheduler steps per turn

  // Every field multiplied by `factor`.
  Budget scaled(std::size_t factor) const;

  bool operator==(const Budget&) const = default;
};

// Work actually performed; never exceeds the corresponding Budget.
struct BudgetReport {
  std::size_t words_enumerated = 0;     // kernel candidates examined
  std::size_t skipped_unknown = 0;      // candidates the oracle could not classify
  std::size_t epi_tuples_tried = 0;     // phi search
  std::size_t psi_tuples_tried = 0;     // inverse-map search
  std::size_t oracle_queries = 0;
  std::size_t certificate_terms_searched = 0;
  std::size_t scheduler_steps = 0;

  BudgetReport& operator+=(const BudgetReport& o);
  bool operator==(const BudgetReport&) const = default;
};

}  // namespace freeiso
