#include "freeiso/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "freeiso/cli/json_io.hpp"
#include "freeiso/cli/text.hpp"
#include "freeiso/decision.hpp"
#include "freeiso/stallings.hpp"
#include "freeiso/verifier.hpp"

namespace freeiso::cli {

namespace {

struct Options {
  std::string input;
  std::size_t n = 0;
  std::string word;
  std::size_t fold_rank = 2;
  std::string fold_words;
  std::string rewriting;
  Budget budget;
  std::size_t scale = 1;
  std::size_t workers = 1;
  bool json = false;
  bool reproducible = false;
};

std::string read_source(const std::string& source) {
  if (source == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(source);
  if (!in) throw Error("cannot read '" + source + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Presentation load_presentation(const std::string& input) {
  auto first = input.find_first_not_of(" \t\n");
  std::string text = first != std::string::npos && input[first] == '<' ? input : read_source(input);
  return parse_presentation(strip_comments(text));
}

std::string join_images(const std::vector<Word>& images, const Presentation& from,
                        const Presentation& to, const char* arrow = " -> ") {
  std::string out;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (i) out += ", ";
    out += from.generator_names()[i] + arrow + print_word(images[i], to.generator_names());
  }
  return out.empty() ? "(none)" : out;
}

std::string report_line(const BudgetReport& r) {
  std::string out;
  const Json j = to_json(r);
  for (const auto& [key, value] : j.items()) {
    if (!out.empty()) out += ' ';
    out += key + "=" + value.dump();
  }
  return out;
}

class Session {
 public:
  Session(const std::string& command, const Options& o)
      : command_(command), o_(o), start_(std::chrono::steady_clock::now()) {}

  Budget budget() const { return o_.budget.scaled(o_.scale); }

  WordProblemOracle oracle(const Presentation& p) const {
    std::optional<RewritingSystem> rs;
    if (!o_.rewriting.empty()) rs = parse_rewriting_fixture(read_source(o_.rewriting), p);
    return compose_oracle(p, budget(), std::move(rs));
  }

  RunResult emit(const Presentation* p, Json outcome, Json cert, const BudgetReport* report,
                 std::string text, int code) const {
    RunResult r;
    r.exit_code = code;
    if (o_.json) {
      Json doc;
      doc["format_version"] = kFormatVersion;
      doc["command"] = command_;
      doc["input_hash"] = p ? Json(input_hash(*p)) : Json(nullptr);
      doc["outcome"] = std::move(outcome);
      cert["budget"] = to_json(budget());
      doc["certificate"] = std::move(cert);
      doc["budget_report"] = report ? to_json(*report) : Json(nullptr);
      if (!o_.reproducible) doc["elapsed_ms"] = elapsed_ms();
      r.out = doc.dump(2) + "\n";
    } else {
      r.out = std::move(text);
      if (report) r.out += "budget: " + report_line(*report) + "\n";
      if (!o_.reproducible) r.out += "elapsed: " + std::to_string(elapsed_ms()) + " ms\n";
    }
    return r;
  }

 private:
  long long elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

  std::string command_;
  const Options& o_;
  std::chrono::steady_clock::time_point start_;
};

std::string describe_outcome(const Outcome& o, const std::string& indent = "") {
  const Presentation& g = o.group;
  std::ostringstream s;
  if (auto* iso = std::get_if<Isomorphic>(&o.verdict)) {
    s << indent << "verdict: isomorphic\n";
    s << indent << "phi: " << join_images(iso->epi.phi.images, g, o.target) << "\n";
    s << indent << "preimages: " << join_images(iso->epi.preimages, o.target, g, " <- ") << "\n";
    s << indent << "psi: " << join_images(iso->psi.psi_images, o.target, g) << "\n";
  } else if (auto* no = std::get_if<NotIsomorphic>(&o.verdict)) {
    s << indent << "verdict: not isomorphic\n";
    if (auto* ob = std::get_if<Obstruction>(&no->certificate)) {
      s << indent << "obstruction: " << outcome_summary(o).at("obstruction").get<std::string>();
      if (ob->kind == ObstructionKind::AbelianizationMismatch) {
        s << " (abelianization " << ob->invariants.to_string() << ")";
      }
      s << "\n";
    } else if (auto* k = std::get_if<KernelWitness>(&no->certificate)) {
      s << indent << "phi: " << join_images(no->epi->phi.images, g, o.target) << "\n";
      s << indent << "kernel word: " << print_word(k->word, g.generator_names()) << "\n";
    }
  } else {
    const auto& in = std::get<Inconclusive>(o.verdict);
    s << indent << "verdict: inconclusive\n" << indent << "reason: " << in.reason << "\n";
  }
  return s.str();
}

int verdict_code(const Outcome& o) {
  return is_inconclusive(o) ? kExitInconclusive : kExitDefinitive;
}

RunResult cmd_decide_free(const Options& o) {
  Session s("decide-free", o);
  Presentation p = load_presentation(o.input);
  Outcome out = decide_free(s.oracle(p), o.n, s.budget());
  std::string text = "group: " + print_presentation(p) + "\ntarget: free group of rank "
                     + std::to_string(o.n) + "\n" + describe_outcome(out);
  return s.emit(&p, outcome_summary(out), certificate(out), &out.report, text, verdict_code(out));
}

RunResult cmd_embed_free(const Options& o) {
  Session s("embed-free", o);
  Presentation p = load_presentation(o.input);
  EmbedOutcome out = embeds_in_free(s.oracle(p), o.n, s.budget(), o.workers);
  std::ostringstream text;
  text << "group: " << print_presentation(p) << "\ntarget: free group of rank " << o.n << "\n";
  int code = kExitDefinitive;
  if (auto* e = std::get_if<Embeds>(&out.verdict)) {
    text << "verdict: embeds as a free group of rank " << e->rank << "\n"
         << describe_outcome(e->outcome, "  ");
  } else {
    bool refuted = std::holds_alternative<NotEmbeddable>(out.verdict);
    const auto& per_rank = refuted ? std::get<NotEmbeddable>(out.verdict).per_rank
                                   : std::get<EmbedInconclusive>(out.verdict).per_rank;
    text << "verdict: " << (refuted ? "not embeddable" : "inconclusive") << "\n";
    for (std::size_t r = 0; r < per_rank.size(); ++r) {
      text << "rank " << r << ":\n" << describe_outcome(per_rank[r], "  ");
    }
    if (!refuted) code = kExitInconclusive;
  }
  return s.emit(&p, outcome_summary(out), certificate(out), &out.report, text.str(), code);
}

RunResult cmd_epi_search(const Options& o) {
  Session s("epi-search", o);
  Presentation p = load_presentation(o.input);
  if (o.n == 0) throw PreconditionError("epi-search needs n >= 1");
  Presentation target = Presentation::free(o.n);
  EpiSearch search(p, o.n, s.budget());
  EpiSearch::Status status;
  while ((status = search.step()) == EpiSearch::Status::Running) {
  }
  Json cert{{"group", print_presentation(p)}, {"rank", o.n}};
  std::string text = "group: " + print_presentation(p) + "\n";
  if (status == EpiSearch::Status::Found) {
    const EpiWitness& w = *search.witness();
    Json images = Json::array();
    for (const Word& a : w.hom.images) images.push_back(print_word(a, target.generator_names()));
    cert["found"] = true;
    cert["images"] = images;
    cert["image_rank"] = w.image_rank;
    text += "found: " + join_images(w.hom.images, p, target) + "\nimage rank: "
            + std::to_string(w.image_rank) + "\n";
    return s.emit(&p, Json{{"verdict", "found"}, {"image_rank", w.image_rank}}, cert,
                  &search.report(), text, kExitDefinitive);
  }
  cert["found"] = false;
  return s.emit(&p, Json{{"verdict", "exhausted"}}, cert, &search.report(),
                text + "exhausted: no qualifying tuple within budget\n", kExitInconclusive);
}

RunResult cmd_wp(const Options& o) {
  Session s("wp", o);
  Presentation p = load_presentation(o.input);
  Word w = parse_word(o.word, p.generator_names());
  BudgetReport report;
  OracleAnswer a = s.oracle(p).query(w, &report);
  Json cert{{"group", print_presentation(p)}, {"word", print_word(w, p.generator_names())},
            {"answer", to_json(a, p)}};
  std::string text = "group: " + print_presentation(p) + "\nword: "
                     + print_word(w, p.generator_names()) + "\nanswer: ";
  if (auto* t = std::get_if<Trivial>(&a)) {
    text += "trivial\ncertificate:";
    for (const auto& term : t->certificate.terms) {
      text += " (" + print_word(term.conjugator, p.generator_names()) + ") r"
              + std::to_string(term.relator + 1) + "^" + std::to_string(term.exponent);
    }
    text += t->certificate.terms.empty() ? " empty product\n" : "\n";
  } else if (auto* n = std::get_if<Nontrivial>(&a)) {
    text += "nontrivial\nwitness: ";
    if (auto* ab = std::get_if<AbelianImage>(&n->witness)) {
      text += "abelian image " + to_json(*ab, p)["exponents"].dump() + "\n";
    } else {
      const auto& nf = std::get<NormalFormNonEmpty>(n->witness);
      text += "normal form " + print_letters(nf.normal_form, p.generator_names()) + " in system "
              + nf.system->id() + "\n";
    }
  } else {
    text += "unknown\n";
  }
  return s.emit(&p, Json{{"answer", to_json(a, p)["answer"]}}, cert, &report, text,
                is_unknown(a) ? kExitInconclusive : kExitDefinitive);
}

RunResult cmd_fold(const Options& o) {
  Session s("fold", o);
  Presentation ambient = Presentation::free(o.fold_rank);
  std::vector<Word> tuple;
  for (const std::string& part : split_top_level(o.fold_words)) {
    tuple.push_back(parse_word(part, ambient.generator_names()));
  }
  FoldedGraph g = FoldedGraph::build(tuple, o.fold_rank);
  Json basis = Json::array();
  for (const Word& b : g.basis()) basis.push_back(print_word(b, ambient.generator_names()));
  Json edges = Json::array();
  for (const auto& e : g.edges()) {
    edges.push_back(Json{{"source", e.source},
                         {"target", e.target},
                         {"label", ambient.generator_names()[e.generator]}});
  }
  Json cert{{"ambient_rank", o.fold_rank}, {"words", Json::array()}, {"vertex_count", g.vertex_count()},
            {"rank", g.rank()}, {"basis", basis}, {"edges", edges}};
  for (const Word& w : tuple) cert["words"].push_back(print_word(w, ambient.generator_names()));
  std::string text = "vertices: " + std::to_string(g.vertex_count()) + "\nedges: "
                     + std::to_string(g.edges().size()) + "\nrank: " + std::to_string(g.rank())
                     + "\nbasis: ";
  for (std::size_t i = 0; i < g.basis().size(); ++i) {
    text += (i ? ", " : "") + print_word(g.basis()[i], ambient.generator_names());
  }
  text += "\n" + g.to_edge_list(ambient.generator_names());
  return s.emit(nullptr, Json{{"rank", g.rank()}}, cert, nullptr, text, kExitDefinitive);
}

RunResult cmd_abelian(const Options& o) {
  Session s("abelian", o);
  Presentation p = load_presentation(o.input);
  AbelianInvariants inv = abelian_invariants(p);
  Json torsion = Json::array();
  for (const auto& t : inv.torsion) torsion.push_back(t.str());
  Json cert{{"group", print_presentation(p)}, {"free_rank", inv.free_rank}, {"torsion", torsion}};
  std::string text = "group: " + print_presentation(p) + "\nabelianization: " + inv.to_string() + "\n";
  return s.emit(&p, Json{{"abelianization", inv.to_string()}}, cert, nullptr, text, kExitDefinitive);
}

RunResult cmd_kb(const Options& o) {
  Session s("kb", o);
  Presentation p = load_presentation(o.input);
  CompletionResult res = knuth_bendix(p, s.budget());
  Json cert{{"group", print_presentation(p)}, {"completed", res.system.has_value()}};
  std::string text = "group: " + print_presentation(p) + "\n";
  if (res.system) {
    cert["system"] = to_json(*res.system, p);
    text += "completed: " + std::to_string(res.system->rules().size()) + " rules\n"
            + print_rewriting_fixture(*res.system, p);
  } else {
    cert["stop_reason"] = res.stop_reason;
    text += "gave up: " + res.stop_reason + "\n";
  }
  return s.emit(&p, Json{{"completed", res.system.has_value()}}, cert, nullptr, text,
                res.system ? kExitDefinitive : kExitInconclusive);
}

verify::Result verify_document(const Json& doc) {
  if (doc.value("format_version", 0) != kFormatVersion) {
    return verify::Result::fail("unsupported format_version");
  }
  const std::string command = doc.at("command").get<std::string>();
  const Json& cert = doc.at("certificate");
  verify::Limits limits;
  if (cert.contains("budget")) limits.max_rewrite_steps = budget_from_json(cert["budget"]).max_rewrite_steps;
  auto check_hash = [&](const Presentation& p) {
    return doc.at("input_hash").get<std::string>() == input_hash(p);
  };
  if (command == "decide-free") {
    Outcome o = outcome_from_certificate(cert);
    if (!check_hash(o.group)) return verify::Result::fail("input_hash does not match the group");
    if (!(outcome_summary(o) == doc.at("outcome"))) {
      return verify::Result::fail("outcome summary does not match the certificate");
    }
    return verify::outcome(o, limits);
  }
  if (command == "embed-free") {
    EmbedOutcome o = embed_from_certificate(cert);
    if (!check_hash(o.group)) return verify::Result::fail("input_hash does not match the group");
    if (!(outcome_summary(o) == doc.at("outcome"))) {
      return verify::Result::fail("outcome summary does not match the certificate");
    }
    return verify::embed_outcome(o, limits);
  }
  if (command == "wp") {
    Presentation p = parse_presentation(cert.at("group").get<std::string>());
    if (!check_hash(p)) return verify::Result::fail("input_hash does not match the group");
    Word w = parse_word(cert.at("word").get<std::string>(), p.generator_names());
    return verify::oracle_answer(p, w, answer_from_json(cert.at("answer"), p), limits);
  }
  if (command == "epi-search") {
    Presentation p = parse_presentation(cert.at("group").get<std::string>());
    if (!check_hash(p)) return verify::Result::fail("input_hash does not match the group");
    if (!cert.at("found").get<bool>()) return {};
    std::size_t n = cert.at("rank").get<std::size_t>();
    Presentation target = Presentation::free(n);
    std::vector<Word> images;
    for (const auto& e : cert.at("images")) images.push_back(parse_word(e.get<std::string>(), target.generator_names()));
    if (!is_homomorphism_to_free(p, images)) return verify::Result::fail("images do not satisfy the relators");
    std::size_t r = FoldedGraph::build(images, n).rank();
    if (r < n || r != cert.at("image_rank").get<std::size_t>()) {
      return verify::Result::fail("image rank is wrong");
    }
    return {};
  }
  if (command == "kb") {
    Presentation p = parse_presentation(cert.at("group").get<std::string>());
    if (!check_hash(p)) return verify::Result::fail("input_hash does not match the group");
    if (!cert.at("completed").get<bool>()) return {};
    return verify::rewriting_system(p, rewriting_from_json(cert.at("system"), p), limits);
  }
  return verify::Result::fail("command '" + command + "' carries no certificate");
}

RunResult cmd_verify(const Options& o) {
  Json doc;
  try {
    doc = Json::parse(read_source(o.input));
  } catch (const Json::exception& e) {
    return RunResult{kExitError, {}, std::string("error: malformed certificate: ") + e.what() + "\n"};
  }
  verify::Result r;
  try {
    r = verify_document(doc);
  } catch (const std::exception& e) {
    r = verify::Result::fail(std::string("malformed certificate: ") + e.what());
  }
  if (!r) return RunResult{kExitError, "rejected: " + r.reason + "\n", {}};
  std::string what = doc.value("command", std::string());
  if (doc.contains("outcome") && doc["outcome"].is_object() && doc["outcome"].contains("verdict")) {
    what += " " + doc["outcome"]["verdict"].get<std::string>();
  }
  return RunResult{kExitDefinitive, "verified: " + what + "\n", {}};
}

void add_budget_flags(CLI::App* sub, Options& o) {
  Budget& b = o.budget;
  sub->add_option("--max-image-len", b.max_image_length, "Per-component length of phi and psi images")
      ->capture_default_str();
  sub->add_option("--max-word-len", b.max_word_length, "Length bound for kernel-word enumeration")
      ->capture_default_str();
  sub->add_option("--max-tuples", b.max_tuples, "Tuples tried by each tuple search")->capture_default_str();
  sub->add_option("--max-cert-terms", b.max_certificate_terms, "Conjugates per triviality certificate")
      ->capture_default_str();
  sub->add_option("--quantum", b.quantum, "Scheduler steps per turn")->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--max-conj-len", b.max_conjugator_length, "Conjugator length in certificates")
      ->capture_default_str();
  sub->add_option("--max-states", b.max_search_states, "Residual words per triviality search")
      ->capture_default_str();
  sub->add_option("--kb-max-rules", b.kb_max_rules, "Rule limit for Knuth-Bendix completion")
      ->capture_default_str();
  sub->add_option("--kb-max-rule-len", b.kb_max_rule_length, "Rule length limit for completion")
      ->capture_default_str();
  sub->add_option("--max-rewrite-steps", b.max_rewrite_steps, "Rewrite steps per normal form")
      ->capture_default_str();
  sub->add_option("--budget-scale", o.scale, "Multiply every budget by this factor")
      ->capture_default_str()->check(CLI::PositiveNumber);
}

void add_output_flags(CLI::App* sub, Options& o) {
  sub->add_flag("--json", o.json, "Emit the structured JSON document");
  sub->add_flag("--reproducible", o.reproducible, "Omit timing fields");
}

}  // namespace

RunResult run(const std::vector<std::string>& args) {
  Options o;
  CLI::App app{"Decide whether a finitely presented group is free, with replayable certificates",
               "freeiso"};
  app.require_subcommand(1);

  struct Command {
    CLI::App* app;
    RunResult (*fn)(const Options&);
  };
  std::vector<Command> commands;
  auto group_command = [&](const char* name, const char* help, RunResult (*fn)(const Options&),
                           bool needs_n) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("input", o.input, "Presentation file, '-' for stdin, or inline text")->required();
    if (needs_n) sub->add_option("-n,--rank", o.n, "Rank of the free group")->required();
    add_budget_flags(sub, o);
    add_output_flags(sub, o);
    commands.push_back({sub, fn});
    return sub;
  };

  CLI::App* decide = group_command("decide-free", "Is G free of rank n?", cmd_decide_free, true);
  decide->add_option("--rewriting", o.rewriting, "Rewriting-system fixture for G");
  decide->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
  CLI::App* embed = group_command("embed-free", "Does G embed in F_n?", cmd_embed_free, true);
  embed->add_option("--rewriting", o.rewriting, "Rewriting-system fixture for G");
  embed->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
  group_command("epi-search", "Find a map of G onto a rank-n free subgroup", cmd_epi_search, true);
  CLI::App* wp = group_command("wp", "Word problem query", cmd_wp, false);
  wp->add_option("--word", o.word, "Word over the generators of G")->required();
  wp->add_option("--rewriting", o.rewriting, "Rewriting-system fixture for G");
  group_command("abelian", "Abelianization invariants", cmd_abelian, false);
  group_command("kb", "Knuth-Bendix completion", cmd_kb, false);

  CLI::App* fold = app.add_subcommand("fold", "Stallings folding of a subgroup of F_rank");
  fold->add_option("--rank", o.fold_rank, "Rank of the ambient free group")->capture_default_str();
  fold->add_option("--words", o.fold_words, "Comma-separated generating words over x,y,z (x1..xn for rank above 3)")->required();
  add_output_flags(fold, o);
  commands.push_back({fold, cmd_fold});

  CLI::App* verify_cmd = app.add_subcommand("verify", "Replay the certificate in a JSON document");
  verify_cmd->add_option("input", o.input, "JSON document, or '-' for stdin")->required();
  commands.push_back({verify_cmd, cmd_verify});

  std::ostringstream out, err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return RunResult{code == 0 ? kExitDefinitive : kExitError, out.str(), err.str()};
  }
  for (const Command& c : commands) {
    if (!c.app->parsed()) continue;
    try {
      return c.fn(o);
    } catch (const std::exception& e) {
      return RunResult{kExitError, {}, std::string("error: ") + e.what() + "\n"};
    }
  }
  return RunResult{kExitError, {}, "error: no command\n"};
}

}  // namespace freeiso::cli
