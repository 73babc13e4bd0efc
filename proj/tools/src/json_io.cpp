#include "freeiso/cli/json_io.hpp"

#include <cstdint>
#include <cstdio>
#include <limits>

#include "freeiso/cli/text.hpp"
#include "freeiso/error.hpp"

namespace freeiso::cli {

namespace {

const std::vector<std::string>& names_of(const Presentation& p) { return p.generator_names(); }

Json word_json(const Word& w, const Presentation& p) { return print_word(w, names_of(p)); }

Word word_from(const Json& j, const Presentation& p) {
  return parse_word(j.get<std::string>(), names_of(p));
}

Json words_json(const std::vector<Word>& ws, const Presentation& p) {
  Json a = Json::array();
  for (const Word& w : ws) a.push_back(word_json(w, p));
  return a;
}

std::vector<Word> words_from(const Json& j, const Presentation& p) {
  std::vector<Word> out;
  for (const auto& e : j) out.push_back(word_from(e, p));
  return out;
}

Json integer_json(const Integer& v) {
  static const Integer lo = std::numeric_limits<std::int64_t>::min();
  static const Integer hi = std::numeric_limits<std::int64_t>::max();
  if (v >= lo && v <= hi) return v.convert_to<std::int64_t>();
  return v.str();
}

Integer integer_from(const Json& j) {
  if (j.is_string()) return Integer(j.get<std::string>());
  return Integer(j.get<std::int64_t>());
}

Json integers_json(const std::vector<Integer>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(integer_json(x));
  return a;
}

std::vector<Integer> integers_from(const Json& j) {
  std::vector<Integer> out;
  for (const auto& e : j) out.push_back(integer_from(e));
  return out;
}

Json products_json(const std::vector<ConjugateProduct>& ps, const Presentation& p) {
  Json a = Json::array();
  for (const auto& cp : ps) a.push_back(to_json(cp, p));
  return a;
}

std::vector<ConjugateProduct> products_from(const Json& j, const Presentation& p) {
  std::vector<ConjugateProduct> out;
  for (const auto& e : j) out.push_back(product_from_json(e, p));
  return out;
}

const char* obstruction_name(ObstructionKind k) {
  switch (k) {
    case ObstructionKind::RankTooLarge: return "rank_too_large";
    case ObstructionKind::AbelianizationMismatch: return "abelianization_mismatch";
    case ObstructionKind::AbelianShortcut: return "abelian_shortcut";
    case ObstructionKind::NoEpimorphismFound: return "no_epimorphism_found";
  }
  return "unknown";
}

ObstructionKind obstruction_from_name(const std::string& s) {
  for (auto k : {ObstructionKind::RankTooLarge, ObstructionKind::AbelianizationMismatch,
                 ObstructionKind::AbelianShortcut, ObstructionKind::NoEpimorphismFound}) {
    if (s == obstruction_name(k)) return k;
  }
  throw Error("unknown obstruction kind '" + s + "'");
}

Json epi_json(const EpiCertificate& e, const Presentation& g) {
  Json j;
  j["images"] = words_json(e.phi.images, e.codomain);
  j["preimages"] = words_json(e.preimages, g);
  j["surjectivity_asserted"] = e.surjectivity_asserted;
  j["hopfian_asserted"] = e.hopfian_asserted;
  return j;
}

EpiCertificate epi_from(const Json& j, const Presentation& g, const Presentation& target) {
  std::vector<Word> images = words_from(j.at("images"), target);
  if (images.size() != g.num_generators()) throw Error("wrong number of images");
  bool ok = target.num_relators() == 0 && is_homomorphism_to_free(g, images);
  return EpiCertificate{GroupHom{g, target.num_generators(), std::move(images), ok},
                        target, words_from(j.at("preimages"), g),
                        j.at("surjectivity_asserted").get<bool>(),
                        j.at("hopfian_asserted").get<bool>()};
}

Json kernel_json(const KernelWitness& k, const Presentation& g, const Presentation& target) {
  Json j;
  j["word"] = word_json(k.word, g);
  j["nontrivial"] = to_json(k.nontrivial, g);
  j["image_proof"] = k.image_proof ? to_json(*k.image_proof, target) : Json(nullptr);
  return j;
}

KernelWitness kernel_from(const Json& j, const Presentation& g, const Presentation& target) {
  KernelWitness k{word_from(j.at("word"), g), witness_from_json(j.at("nontrivial"), g), {}};
  if (!j.at("image_proof").is_null()) k.image_proof = product_from_json(j.at("image_proof"), target);
  return k;
}

Json inverse_json(const InverseWitness& w, const Presentation& g) {
  Json j;
  j["psi_images"] = words_json(w.psi_images, g);
  j["relator_proofs"] = products_json(w.relator_proofs, g);
  j["roundtrip_proofs"] = products_json(w.roundtrip_proofs, g);
  return j;
}

InverseWitness inverse_from(const Json& j, const Presentation& g) {
  return InverseWitness{words_from(j.at("psi_images"), g),
                        products_from(j.at("relator_proofs"), g),
                        products_from(j.at("roundtrip_proofs"), g)};
}

Json obstruction_json(const Obstruction& ob, const Presentation& g) {
  Json j;
  j["kind"] = obstruction_name(ob.kind);
  if (ob.kind == ObstructionKind::AbelianizationMismatch) {
    j["invariants"] = {{"free_rank", ob.invariants.free_rank},
                       {"torsion", integers_json(ob.invariants.torsion)}};
  }
  if (ob.kind == ObstructionKind::AbelianShortcut) {
    j["commutator_proofs"] = products_json(ob.commutator_proofs, g);
  }
  if (ob.kind == ObstructionKind::NoEpimorphismFound) j["exhaustive"] = ob.exhaustive;
  return j;
}

Obstruction obstruction_from(const Json& j, const Presentation& g) {
  Obstruction ob;
  ob.kind = obstruction_from_name(j.at("kind").get<std::string>());
  if (j.contains("invariants")) {
    ob.invariants.free_rank = j["invariants"].at("free_rank").get<std::size_t>();
    ob.invariants.torsion = integers_from(j["invariants"].at("torsion"));
  }
  if (j.contains("commutator_proofs")) ob.commutator_proofs = products_from(j["commutator_proofs"], g);
  if (j.contains("exhaustive")) ob.exhaustive = j["exhaustive"].get<bool>();
  return ob;
}

}  // namespace

std::string input_hash(const Presentation& p) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : print_presentation(p)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json to_json(const Budget& b) {
  return Json{{"max_certificate_terms", b.max_certificate_terms},
              {"max_conjugator_length", b.max_conjugator_length},
              {"max_search_states", b.max_search_states},
              {"max_word_length", b.max_word_length},
              {"max_image_length", b.max_image_length},
              {"max_tuples", b.max_tuples},
              {"kb_max_rules", b.kb_max_rules},
              {"kb_max_rule_length", b.kb_max_rule_length},
              {"max_rewrite_steps", b.max_rewrite_steps},
              {"quantum", b.quantum}};
}

Budget budget_from_json(const Json& j) {
  Budget b;
  auto get = [&](const char* key, std::size_t& field) {
    if (j.contains(key)) field = j[key].get<std::size_t>();
  };
  get("max_certificate_terms", b.max_certificate_terms);
  get("max_conjugator_length", b.max_conjugator_length);
  get("max_search_states", b.max_search_states);
  get("max_word_length", b.max_word_length);
  get("max_image_length", b.max_image_length);
  get("max_tuples", b.max_tuples);
  get("kb_max_rules", b.kb_max_rules);
  get("kb_max_rule_length", b.kb_max_rule_length);
  get("max_rewrite_steps", b.max_rewrite_steps);
  get("quantum", b.quantum);
  return b;
}

Json to_json(const BudgetReport& r) {
  return Json{{"words_enumerated", r.words_enumerated},
              {"skipped_unknown", r.skipped_unknown},
              {"epi_tuples_tried", r.epi_tuples_tried},
              {"psi_tuples_tried", r.psi_tuples_tried},
              {"oracle_queries", r.oracle_queries},
              {"certificate_terms_searched", r.certificate_terms_searched},
              {"scheduler_steps", r.scheduler_steps}};
}

Json to_json(const ConjugateProduct& cp, const Presentation& p) {
  Json a = Json::array();
  for (const auto& t : cp.terms) {
    a.push_back(Json{{"conjugator", word_json(t.conjugator, p)},
                     {"relator", t.relator},
                     {"exponent", t.exponent}});
  }
  return a;
}

ConjugateProduct product_from_json(const Json& j, const Presentation& p) {
  ConjugateProduct cp;
  for (const auto& t : j) {
    cp.terms.push_back(ConjugateTerm{word_from(t.at("conjugator"), p),
                                     t.at("relator").get<std::size_t>(),
                                     t.at("exponent").get<int>()});
  }
  return cp;
}

Json to_json(const RewritingSystem& rs, const Presentation& p) {
  Json order = Json::array();
  for (Letter l : rs.order()) order.push_back(print_letters(std::span<const Letter>(&l, 1), names_of(p)));
  Json rules = Json::array();
  for (const auto& r : rs.rules()) {
    Json rule{{"lhs", print_letters(r.lhs, names_of(p))}, {"rhs", print_letters(r.rhs, names_of(p))}};
    rule["proof"] = r.proof ? to_json(*r.proof, p) : Json(nullptr);
    rules.push_back(std::move(rule));
  }
  return Json{{"id", rs.id()}, {"order", order}, {"rules", rules}};
}

RewritingSystem rewriting_from_json(const Json& j, const Presentation& p) {
  std::vector<Letter> order;
  for (const auto& e : j.at("order")) {
    LetterString l = parse_letters(e.get<std::string>(), names_of(p));
    if (l.size() != 1) throw Error("order entries must be single letters");
    order.push_back(l[0]);
  }
  auto side = [&](const Json& s) {
    LetterString l = parse_letters(s.get<std::string>(), names_of(p));
    return l;
  };
  std::vector<RewriteRule> rules;
  for (const auto& r : j.at("rules")) {
    RewriteRule rule{side(r.at("lhs")), side(r.at("rhs")), std::nullopt};
    if (r.contains("proof") && !r["proof"].is_null()) rule.proof = product_from_json(r["proof"], p);
    rules.push_back(std::move(rule));
  }
  RewritingSystem rs(p.num_generators(), std::move(order), std::move(rules));
  if (j.contains("id") && j["id"].get<std::string>() != rs.id()) {
    throw Error("rewriting system id does not match its rules");
  }
  return rs;
}

Json to_json(const NontrivialityWitness& w, const Presentation& p) {
  if (auto* a = std::get_if<AbelianImage>(&w)) {
    return Json{{"kind", "abelian_image"}, {"exponents", integers_json(a->exponents)}};
  }
  const auto& nf = std::get<NormalFormNonEmpty>(w);
  return Json{{"kind", "normal_form"},
              {"normal_form", print_letters(nf.normal_form, names_of(p))},
              {"system", to_json(*nf.system, p)}};
}

NontrivialityWitness witness_from_json(const Json& j, const Presentation& p) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "abelian_image") return AbelianImage{integers_from(j.at("exponents"))};
  if (kind == "normal_form") {
    LetterString nf = parse_letters(j.at("normal_form").get<std::string>(), names_of(p));
    if (nf.size() == 0) throw Error("normal form must be nonempty");
    return NormalFormNonEmpty{
        std::make_shared<const RewritingSystem>(rewriting_from_json(j.at("system"), p)), nf};
  }
  throw Error("unknown witness kind '" + kind + "'");
}

Json to_json(const OracleAnswer& a, const Presentation& p) {
  if (auto* t = std::get_if<Trivial>(&a)) {
    return Json{{"answer", "trivial"}, {"certificate", to_json(t->certificate, p)}};
  }
  if (auto* n = std::get_if<Nontrivial>(&a)) {
    return Json{{"answer", "nontrivial"}, {"witness", to_json(n->witness, p)}};
  }
  return Json{{"answer", "unknown"}};
}

OracleAnswer answer_from_json(const Json& j, const Presentation& p) {
  const std::string kind = j.at("answer").get<std::string>();
  if (kind == "trivial") return Trivial{product_from_json(j.at("certificate"), p)};
  if (kind == "nontrivial") return Nontrivial{witness_from_json(j.at("witness"), p)};
  if (kind == "unknown") return Unknown{};
  throw Error("unknown oracle answer '" + kind + "'");
}

Json outcome_summary(const Outcome& o) {
  Json j;
  j["target_rank"] = o.target.num_generators();
  if (is_isomorphic(o)) {
    j["verdict"] = "isomorphic";
  } else if (auto* no = std::get_if<NotIsomorphic>(&o.verdict)) {
    j["verdict"] = "not_isomorphic";
    if (auto* ob = std::get_if<Obstruction>(&no->certificate)) {
      j["obstruction"] = obstruction_name(ob->kind);
    } else {
      j["obstruction"] = "kernel_witness";
    }
  } else {
    j["verdict"] = "inconclusive";
    j["reason"] = std::get<Inconclusive>(o.verdict).reason;
  }
  return j;
}

Json certificate(const Outcome& o) {
  const Presentation& g = o.group;
  const Presentation& h = o.target;
  Json j;
  j["group"] = print_presentation(g);
  j["target"] = print_presentation(h);
  if (auto* iso = std::get_if<Isomorphic>(&o.verdict)) {
    j["verdict"] = "isomorphic";
    j["epimorphism"] = epi_json(iso->epi, g);
    j["inverse"] = inverse_json(iso->psi, g);
  } else if (auto* no = std::get_if<NotIsomorphic>(&o.verdict)) {
    j["verdict"] = "not_isomorphic";
    if (auto* ob = std::get_if<Obstruction>(&no->certificate)) {
      j["obstruction"] = obstruction_json(*ob, g);
    } else if (auto* k = std::get_if<KernelWitness>(&no->certificate)) {
      j["kernel_witness"] = kernel_json(*k, g, h);
    } else {
      j["inverse"] = inverse_json(std::get<InverseWitness>(no->certificate), g);
    }
    if (no->epi) j["epimorphism"] = epi_json(*no->epi, g);
  } else {
    const auto& in = std::get<Inconclusive>(o.verdict);
    j["verdict"] = "inconclusive";
    j["reason"] = in.reason;
    if (in.kernel) j["kernel_witness"] = kernel_json(*in.kernel, g, h);
    if (in.epi) j["epimorphism"] = epi_json(*in.epi, g);
  }
  j["budget_report"] = to_json(o.report);
  return j;
}

Outcome outcome_from_certificate(const Json& j) {
  Presentation g = parse_presentation(j.at("group").get<std::string>());
  Presentation h = parse_presentation(j.at("target").get<std::string>());
  Outcome o{g, h, Inconclusive{}, {}};
  const std::string verdict = j.at("verdict").get<std::string>();
  std::optional<EpiCertificate> epi;
  if (j.contains("epimorphism")) epi = epi_from(j["epimorphism"], g, h);
  if (verdict == "isomorphic") {
    if (!epi) throw Error("isomorphism certificate without an epimorphism");
    o.verdict = Isomorphic{*epi, inverse_from(j.at("inverse"), g)};
  } else if (verdict == "not_isomorphic") {
    NotIsomorphic no;
    if (j.contains("obstruction")) {
      no.certificate = obstruction_from(j["obstruction"], g);
    } else if (j.contains("kernel_witness")) {
      no.certificate = kernel_from(j["kernel_witness"], g, h);
    } else {
      no.certificate = inverse_from(j.at("inverse"), g);
    }
    no.epi = epi;
    o.verdict = std::move(no);
  } else if (verdict == "inconclusive") {
    Inconclusive in{j.value("reason", std::string()), std::nullopt, epi};
    if (j.contains("kernel_witness")) in.kernel = kernel_from(j["kernel_witness"], g, h);
    o.verdict = std::move(in);
  } else {
    throw Error("unknown verdict '" + verdict + "'");
  }
  return o;
}

Json outcome_summary(const EmbedOutcome& o) {
  Json j;
  j["target_rank"] = o.target_rank;
  if (auto* e = std::get_if<Embeds>(&o.verdict)) {
    j["verdict"] = "embeds";
    j["rank"] = e->rank;
    return j;
  }
  const std::vector<Outcome>& per_rank = std::holds_alternative<NotEmbeddable>(o.verdict)
                                             ? std::get<NotEmbeddable>(o.verdict).per_rank
                                             : std::get<EmbedInconclusive>(o.verdict).per_rank;
  j["verdict"] = std::holds_alternative<NotEmbeddable>(o.verdict) ? "not_embeddable" : "inconclusive";
  Json ranks = Json::array();
  for (const auto& sub : per_rank) ranks.push_back(outcome_summary(sub));
  j["per_rank"] = ranks;
  return j;
}

Json certificate(const EmbedOutcome& o) {
  Json j;
  j["group"] = print_presentation(o.group);
  j["target_rank"] = o.target_rank;
  if (auto* e = std::get_if<Embeds>(&o.verdict)) {
    j["verdict"] = "embeds";
    j["rank"] = e->rank;
    j["outcome"] = certificate(e->outcome);
    return j;
  }
  bool refuted = std::holds_alternative<NotEmbeddable>(o.verdict);
  const auto& per_rank = refuted ? std::get<NotEmbeddable>(o.verdict).per_rank
                                 : std::get<EmbedInconclusive>(o.verdict).per_rank;
  j["verdict"] = refuted ? "not_embeddable" : "inconclusive";
  Json ranks = Json::array();
  for (const auto& sub : per_rank) ranks.push_back(certificate(sub));
  j["per_rank"] = ranks;
  return j;
}

EmbedOutcome embed_from_certificate(const Json& j) {
  EmbedOutcome o{parse_presentation(j.at("group").get<std::string>()),
                 j.at("target_rank").get<std::size_t>(), NotEmbeddable{}, {}};
  const std::string verdict = j.at("verdict").get<std::string>();
  auto sub = [&](const Json& c) {
    Outcome out = outcome_from_certificate(c);
    if (!(out.group == o.group)) throw Error("per-rank certificate is about a different group");
    return out;
  };
  if (verdict == "embeds") {
    o.verdict = Embeds{j.at("rank").get<std::size_t>(), sub(j.at("outcome"))};
    return o;
  }
  std::vector<Outcome> per_rank;
  for (const auto& c : j.at("per_rank")) per_rank.push_back(sub(c));
  if (verdict == "not_embeddable") {
    o.verdict = NotEmbeddable{std::move(per_rank)};
  } else if (verdict == "inconclusive") {
    o.verdict = EmbedInconclusive{std::move(per_rank)};
  } else {
    throw Error("unknown verdict '" + verdict + "'");
  }
  return o;
}

}  // namespace freeiso::cli
