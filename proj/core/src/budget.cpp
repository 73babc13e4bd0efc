#include "freeiso/budget.hpp"

namespace freeiso {

Budget Budget::scaled(std::size_t factor) const {
  Budget b = *this;
  b.max_certificate_terms *= factor;
  b.max_conjugator_length *= factor;
  b.max_search_states *= factor;
  b.max_word_length *= factor;
  b.max_image_length *= factor;
  b.max_tuples *= factor;
  b.kb_max_rules *= factor;
  b.kb_max_rule_length *= factor;
  b.max_rewrite_steps *= factor;
  b.quantum *= factor;
  return b;
}

BudgetReport& BudgetReport::operator+=(const BudgetReport& o) {
  words_enumerated += o.words_enumerated;
  skipped_unknown += o.skipped_unknown;
  epi_tuples_tried += o.epi_tuples_tried;
  psi_tuples_tried += o.psi_tuples_tried;
  oracle_queries += o.oracle_queries;
  certificate_terms_searched += o.certificate_terms_searched;
  scheduler_steps += o.scheduler_steps;
  return *this;
}

}  // namespace freeiso
