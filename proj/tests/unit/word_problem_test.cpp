#include <set>

#include "common.hpp"
#include "freeiso/rewriting.hpp"
#include "freeiso/verifier.hpp"
#include "freeiso/word_problem.hpp"
#include "oracles.hpp"

namespace {

const char* kZ2Fixture =
    "# free abelian of rank 2\n"
    "order: a a^-1 b b^-1\n"
    "rule: a*a^-1 -> 1\n"
    "rule: a^-1*a -> 1\n"
    "rule: b*b^-1 -> 1\n"
    "rule: b^-1*b -> 1\n"
    "rule: b*a -> a*b\n"
    "rule: b*a^-1 -> a^-1*b\n"
    "rule: b^-1*a -> a*b^-1\n"
    "rule: b^-1*a^-1 -> a^-1*b^-1\n";

LetterString L(const Presentation& p, const char* text) {
  if (std::string_view(text).empty()) return {};
  return cli::parse_letters(text, p.generator_names());
}

std::set<std::pair<LetterString, LetterString>> rule_set(const RewritingSystem& rs) {
  std::set<std::pair<LetterString, LetterString>> out;
  for (const auto& r : rs.rules()) out.emplace(r.lhs, r.rhs);
  return out;
}

}  // namespace

TEST_CASE("yes_part finds single conjugates") {
  Presentation p = P("<a,b | b>");
  OracleAnswer a = yes_part(p, W(p, "b"), Budget{});
  REQUIRE(is_trivial(a));
  ConjugateProduct expect{{{Word(), 0, 1}}};
  CHECK(std::get<Trivial>(a).certificate == expect);

  OracleAnswer c = yes_part(p, W(p, "a*b*a^-1"), Budget{});
  REQUIRE(is_trivial(c));
  ConjugateProduct expect_c{{{W(p, "a"), 0, 1}}};
  CHECK(std::get<Trivial>(c).certificate == expect_c);

  CHECK(std::get<Trivial>(yes_part(p, Word(), Budget{})).certificate.terms.empty());
}

TEST_CASE("yes_part certificates replay") {
  Presentation p = P("<a,b | [a,b]>");
  Word w = W(p, "a^2*b*a^-2*b^-1");
  BudgetReport report;
  OracleAnswer ans = yes_part(p, w, Budget{}, &report);
  REQUIRE(is_trivial(ans));
  CHECK(replay(p, std::get<Trivial>(ans).certificate) == codes_of(w));
  CHECK(verify::trivial(p, w, std::get<Trivial>(ans).certificate).ok);
  CHECK(report.certificate_terms_searched > 0);
}

TEST_CASE("yes_part is only a semi-decision") {
  Presentation p = P("<a,b | [a,b]>");
  Budget small;
  small.max_search_states = 2000;
  CHECK(is_unknown(yes_part(p, W(p, "a"), small)));
  CHECK(is_nontrivial(abelian_no_part(p, W(p, "a"))));
}

TEST_CASE("abelian no-part") {
  Presentation z2 = P("<a,b | [a,b]>");
  OracleAnswer a = abelian_no_part(z2, W(z2, "a"));
  REQUIRE(is_nontrivial(a));
  auto img = std::get<AbelianImage>(std::get<Nontrivial>(a).witness);
  CHECK(img.exponents == to_integers({1, 0}));
  CHECK(is_unknown(abelian_no_part(z2, W(z2, "[a,b]"))));
  Presentation c2 = P("<a | a^2>");
  CHECK(is_nontrivial(abelian_no_part(c2, W(c2, "a"))));
  CHECK(is_unknown(abelian_no_part(c2, W(c2, "a^2"))));
}

TEST_CASE("confluence checks") {
  Presentation z2 = P("<a,b | [a,b]>");
  RewritingSystem empty(2, RewritingSystem::default_order(2), {});
  CHECK(check_confluence(empty, Budget{}).status == ConfluenceResult::Status::Confluent);

  RewritingSystem rs = cli::parse_rewriting_fixture(kZ2Fixture, z2);
  CHECK(check_confluence(rs, Budget{}).status == ConfluenceResult::Status::Confluent);
  CHECK_FALSE(brute_critical_pairs(rules_of(rs)).has_value());

  RewritingSystem commute = cli::parse_rewriting_fixture("rule: b*a -> a*b\n", z2);
  CHECK(check_confluence(commute, Budget{}).status == ConfluenceResult::Status::Confluent);
  auto nf = commute.normal_form(L(z2, "b*a*a^-1"), 100);
  REQUIRE(nf);
  CHECK(*nf == L(z2, "a*b*a^-1"));
  CHECK_FALSE(accept_rewriting_system(z2, commute, Budget{}).system.has_value());

  RewritingSystem broken = cli::parse_rewriting_fixture("rule: a*b -> 1\nrule: b*a^-1 -> 1\n", z2);
  ConfluenceResult bad = check_confluence(broken, Budget{});
  CHECK(bad.status == ConfluenceResult::Status::CriticalPairFailure);
  CHECK(bad.left != bad.right);
  CHECK(brute_critical_pairs(rules_of(broken)).has_value());
}

TEST_CASE("rewriting systems reject non-decreasing rules") {
  Presentation z2 = P("<a,b | [a,b]>");
  CHECK_THROWS(cli::parse_rewriting_fixture("rule: a*b -> b*a\n", z2));
  CHECK_THROWS(cli::parse_rewriting_fixture("rule: 1 -> a\n", z2));
}

TEST_CASE("knuth-bendix completion") {
  CompletionResult free2 = knuth_bendix(P("<a,b | >"), Budget{});
  REQUIRE(free2.system);
  CHECK(free2.system->rules().size() == 4);

  Presentation z3 = P("<a | a^3>");
  CompletionResult c3 = knuth_bendix(z3, Budget{});
  REQUIRE(c3.system);
  auto rules = rule_set(*c3.system);
  CHECK(rules.count({L(z3, "a*a"), L(z3, "a^-1")}) == 1);
  CHECK(rules.count({L(z3, "a^-1*a^-1"), L(z3, "a")}) == 1);
  CHECK(c3.system->has_proofs());

  Presentation z2 = P("<a,b | [a,b]>");
  CompletionResult c2 = knuth_bendix(z2, Budget{});
  REQUIRE(c2.system);
  CHECK(rule_set(*c2.system) == rule_set(cli::parse_rewriting_fixture(kZ2Fixture, z2)));
  CHECK(verify::rewriting_system(z2, *c2.system).ok);
}

TEST_CASE("knuth-bendix gives up within budget") {
  Budget tiny;
  tiny.kb_max_rules = 6;
  CompletionResult r = knuth_bendix(P("<a,b | a^2*b^-3>"), tiny);
  CHECK_FALSE(r.system.has_value());
  CHECK_FALSE(r.stop_reason.empty());
}

TEST_CASE("normal forms in Z^2") {
  Presentation z2 = P("<a,b | [a,b]>");
  RewritingSystem rs = *knuth_bendix(z2, Budget{}).system;
  CHECK(*rs.normal_form(L(z2, "b*a*b^-1"), 100) == L(z2, "a"));
  CHECK(rs.normal_form({}, 100)->empty());
  CHECK(*rs.normal_form(L(z2, "a*b"), 100) == L(z2, "a*b"));
  CHECK_FALSE(rs.normal_form(L(z2, "b^3*a^3"), 2).has_value());

  LetterString s = L(z2, "b*a^2*b^-1*a");
  auto trace = rs.normal_form_with_proof(z2, s, 1000);
  REQUIRE(trace);
  CHECK(trace->normal_form == L(z2, "a^3"));
  Word target = Word::reduce(s) * invert(Word::reduce(trace->normal_form));
  CHECK(replay(z2, trace->proof) == codes_of(target));
}

TEST_CASE("user rewriting systems are audited") {
  Presentation z2 = P("<a,b | [a,b]>");
  RewritingSystem rs = cli::parse_rewriting_fixture(kZ2Fixture, z2);
  RewritingAcceptance ok = accept_rewriting_system(z2, rs, Budget{});
  REQUIRE(ok.system);
  CHECK(ok.system->has_proofs());
  CHECK(verify::rewriting_system(z2, *ok.system).ok);

  Presentation free2 = P("<a,b | >");
  RewritingAcceptance wrong = accept_rewriting_system(free2, rs, Budget{});
  CHECK_FALSE(wrong.system.has_value());
  CHECK_FALSE(wrong.reason.empty());
  CHECK_THROWS_AS(compose_oracle(free2, Budget{}, rs), PreconditionError);
}

TEST_CASE("oracle answers") {
  Presentation z2 = P("<a,b | [a,b]>");
  WordProblemOracle full = compose_oracle(z2, Budget{});
  CHECK(full.is_total());
  OracleAnswer t = full.query(W(z2, "[a,b]"));
  REQUIRE(is_trivial(t));
  CHECK(verify::oracle_answer(z2, W(z2, "[a,b]"), t).ok);
  OracleAnswer n = full.query(W(z2, "a*b*a"));
  REQUIRE(is_nontrivial(n));
  CHECK(verify::oracle_answer(z2, W(z2, "a*b*a"), n).ok);

  WordProblemOracle partial(z2, Budget{});
  CHECK_FALSE(partial.is_total());
  OracleAnswer a = partial.query(W(z2, "a"));
  REQUIRE(is_nontrivial(a));
  CHECK(std::holds_alternative<AbelianImage>(std::get<Nontrivial>(a).witness));

  Presentation tref = P("<a,b | a^2*b^-3>");
  Budget b;
  b.max_search_states = 5000;
  WordProblemOracle t_oracle(tref, b);
  CHECK(is_unknown(t_oracle.query(W(tref, "[a,b]"))));
  CHECK(is_unknown(t_oracle.query_nontrivial(W(tref, "a^2*b^-3"))));
  CHECK(is_trivial(t_oracle.query(W(tref, "a^2*b^-3"))));
}

TEST_CASE("answers never contradict across budgets") {
  Presentation tref = P("<a,b | a^2*b^-3>");
  Budget b;
  b.max_search_states = 5000;
  WordProblemOracle small(tref, b);
  WordProblemOracle large(tref, b.scaled(2));
  WordEnumerator en(2, 4);
  while (auto w = en.next()) {
    OracleAnswer x = small.query(*w);
    OracleAnswer y = large.query(*w);
    if (!is_unknown(x)) CHECK(x.index() == y.index());
  }
}

TEST_CASE("nontrivial enumeration") {
  Presentation free2 = P("<a,b | >");
  Budget b;
  b.max_word_length = 3;
  WordProblemOracle f(free2, b);
  NontrivialEnumerator en(f, b);
  std::size_t n = 0;
  while (en.next()) ++n;
  CHECK(n == 4 + 12 + 36);
  CHECK(en.skipped().empty());

  Presentation z2 = P("<a,b | [a,b]>");
  WordProblemOracle z = compose_oracle(z2, b);
  NontrivialEnumerator ez(z, b);
  std::vector<Word> first;
  for (int i = 0; i < 5; ++i) first.push_back(ez.next()->word);
  CHECK(first == std::vector<Word>{W(z2, "a"), W(z2, "a^-1"), W(z2, "b"), W(z2, "b^-1"), W(z2, "a^2")});

  Presentation tref = P("<a,b | a^2*b^-3>");
  b.max_word_length = 4;
  b.max_search_states = 2000;
  WordProblemOracle t(tref, b);
  NontrivialEnumerator et(t, b);
  while (et.next()) {
  }
  const auto& skipped = et.skipped();
  CHECK(std::find(skipped.begin(), skipped.end(), W(tref, "[a,b]")) != skipped.end());
}
