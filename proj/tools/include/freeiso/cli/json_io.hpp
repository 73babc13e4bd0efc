#pragma once

#include <string>

#include "json.hpp"

#include "freeiso/budget.hpp"
#include "freeiso/decision.hpp"
#include "freeiso/hom_search.hpp"
#include "freeiso/presentation.hpp"
#include "freeiso/rewriting.hpp"
#include "freeiso/word_problem.hpp"

namespace freeiso::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

// FNV-1a 64 of the printed presentation, as 16 hex digits.
std::string input_hash(const Presentation& p);

Json to_json(const Budget& b);
Budget budget_from_json(const Json& j);
Json to_json(const BudgetReport& r);

Json to_json(const ConjugateProduct& cp, const Presentation& p);
ConjugateProduct product_from_json(const Json& j, const Presentation& p);

Json to_json(const RewritingSystem& rs, const Presentation& p);
RewritingSystem rewriting_from_json(const Json& j, const Presentation& p);

Json to_json(const NontrivialityWitness& w, const Presentation& p);
NontrivialityWitness witness_from_json(const Json& j, const Presentation& p);

Json to_json(const OracleAnswer& a, const Presentation& p);
OracleAnswer answer_from_json(const Json& j, const Presentation& p);

// Short verdict summary for the "outcome" field.
Json outcome_summary(const Outcome& o);
Json outcome_summary(const EmbedOutcome& o);

// Everything the verifier needs, with words written in generator names.
Json certificate(const Outcome& o);
Outcome outcome_from_certificate(const Json& j);
Json certificate(const EmbedOutcome& o);
EmbedOutcome embed_from_certificate(const Json& j);

}  // namespace freeiso::cli
