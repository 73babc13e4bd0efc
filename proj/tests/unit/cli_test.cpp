#include <filesystem>
#include <fstream>
#include <sstream>

#include "common.hpp"
#include "freeiso/cli/commands.hpp"
#include "freeiso/cli/json_io.hpp"

namespace {

std::string read(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string corpus(const char* name) { return std::string(FREEISO_CORPUS_DIR) + "/" + name; }

cli::RunResult run(std::vector<std::string> args) { return cli::run(args); }

}  // namespace

TEST_CASE("parsing presentations") {
  Presentation z2 = P("<a,b | [a,b]>");
  CHECK(z2.num_generators() == 2);
  CHECK(z2.relator(0) == W(z2, "a*b*a^-1*b^-1"));
  Presentation c2 = P("<a | a^2>");
  CHECK(c2.relator(0) == W(c2, "a*a"));
  CHECK(P("<a,b|>").is_free());
  CHECK(P("< a , b | a b a^-1 >").relator(0) == W(z2, "b"));
  CHECK(P("<a,b | (a*b)^2, [a^2, b]^-1>").num_relators() == 2);
}

TEST_CASE("parse errors carry positions") {
  auto error_at = [](const char* text) -> std::optional<std::size_t> {
    try {
      P(text);
    } catch (const cli::ParseError& e) {
      return e.position();
    }
    return std::nullopt;
  };
  CHECK(error_at("<a | b>") == 5u);
  CHECK(error_at("<a | a^0>") == 7u);
  CHECK(error_at("<a,b | [a,b>").has_value());
  CHECK(error_at("<a | a^2").has_value());
  CHECK(error_at("<a | (a^2>").has_value());
  CHECK(error_at("<a,a | >") == 3u);
  CHECK(error_at("<a | a,>").has_value());
  CHECK(error_at("<a | a> x").has_value());
  CHECK_THROWS_WITH(P("<a | b>"), doctest::Contains("unknown generator 'b'"));
}

TEST_CASE("printing round-trips") {
  for (const auto& entry : std::filesystem::directory_iterator(FREEISO_CORPUS_DIR)) {
    CAPTURE(entry.path().string());
    Presentation p = P(cli::strip_comments(read(entry.path())));
    std::string printed = cli::print_presentation(p);
    CHECK(P(printed) == p);
    CHECK(cli::print_presentation(P(printed)) == printed);
  }
  std::vector<std::string> names{"a", "b"};
  CHECK(cli::print_word(Word(), names) == "1");
  CHECK(cli::print_letters(cli::parse_letters("a*a^-1*b^3", names), names) == "a*a^-1*b^3");
  CHECK(cli::split_top_level("x*y, [x,y], (x,y)") == std::vector<std::string>{"x*y", " [x,y]", " (x,y)"});
}

TEST_CASE("rewriting fixture round trip") {
  Presentation z2 = P("<a,b | [a,b]>");
  RewritingSystem rs = *knuth_bendix(z2, Budget{}).system;
  std::string text = cli::print_rewriting_fixture(rs, z2);
  RewritingSystem back = cli::parse_rewriting_fixture(text, z2);
  CHECK(back.order() == rs.order());
  CHECK(back.id() == rs.id());
  CHECK_THROWS_WITH(cli::parse_rewriting_fixture("order: a\nbogus\n", z2), doctest::Contains("position 2"));
}

TEST_CASE("exit codes") {
  CHECK(run({"decide-free", corpus("cyclic.fp"), "-n", "1"}).exit_code == cli::kExitDefinitive);
  CHECK(run({"decide-free", corpus("z2.fp"), "-n", "2"}).exit_code == cli::kExitDefinitive);
  CHECK(run({"decide-free", corpus("trefoil.fp"), "-n", "1"}).exit_code == cli::kExitInconclusive);
  CHECK(run({"decide-free", "<a | b>", "-n", "1"}).exit_code == cli::kExitError);
  CHECK(run({"decide-free", "missing.fp", "-n", "1"}).exit_code == cli::kExitError);
  CHECK(run({"decide-free"}).exit_code == cli::kExitError);
  CHECK(run({"frobnicate"}).exit_code == cli::kExitError);
  CHECK(run({"--help"}).exit_code == cli::kExitDefinitive);
}

TEST_CASE("decide-free json document") {
  auto r = run({"decide-free", corpus("redundant3.fp"), "-n", "2", "--max-image-len", "3", "--json", "--reproducible"});
  REQUIRE(r.exit_code == 0);
  cli::Json doc = cli::Json::parse(r.out);
  CHECK(doc["format_version"] == cli::kFormatVersion);
  CHECK(doc["command"] == "decide-free");
  CHECK(doc["outcome"]["verdict"] == "isomorphic");
  CHECK_FALSE(doc.contains("elapsed_ms"));
  CHECK(doc["input_hash"] == cli::input_hash(P("<a,b,c | c^-1*a*b>")));
  Outcome o = cli::outcome_from_certificate(doc["certificate"]);
  CHECK(is_isomorphic(o));
}

TEST_CASE("verify subcommand") {
  auto doc = run({"decide-free", corpus("z2.fp"), "-n", "2", "--json", "--reproducible"});
  std::string path = (std::filesystem::temp_directory_path() / "freeiso_cli_test.json").string();
  std::ofstream(path) << doc.out;
  CHECK(run({"verify", path}).exit_code == 0);

  cli::Json j = cli::Json::parse(doc.out);
  j["input_hash"] = "0000000000000000";
  std::ofstream(path) << j.dump();
  auto bad = run({"verify", path});
  CHECK(bad.exit_code == cli::kExitError);
  CHECK(bad.out.find("input_hash") != std::string::npos);

  j = cli::Json::parse(doc.out);
  j["outcome"]["verdict"] = "isomorphic";
  std::ofstream(path) << j.dump();
  CHECK(run({"verify", path}).exit_code == cli::kExitError);
  std::filesystem::remove(path);
}

TEST_CASE("word problem, abelian, kb, fold and epi-search commands") {
  auto wp = run({"wp", corpus("z2.fp"), "--word", "a*b*a^-1*b^-1"});
  CHECK(wp.exit_code == 0);
  CHECK(wp.out.find("answer: trivial") != std::string::npos);
  auto wpn = run({"wp", "<a,b | [a,b]>", "--word", "a", "--json"});
  CHECK(cli::Json::parse(wpn.out)["outcome"]["answer"] == "nontrivial");
  auto wpu = run({"wp", "<a,b | a^2*b^-3>", "--word", "[a,b]", "--max-states", "500", "--kb-max-rules", "4"});
  CHECK(wpu.exit_code == cli::kExitInconclusive);

  auto ab = run({"abelian", corpus("trefoil.fp")});
  CHECK(ab.out.find("abelianization: Z\n") != std::string::npos);

  auto kb = run({"kb", "<a | a^3>"});
  CHECK(kb.exit_code == 0);
  CHECK(kb.out.find("rule: a^2 -> a^-1") != std::string::npos);

  auto fold = run({"fold", "--rank", "2", "--words", "x*y,x*y^2"});
  CHECK(fold.exit_code == 0);
  CHECK(fold.out.find("rank: 2") != std::string::npos);

  auto epi = run({"epi-search", corpus("redundant3.fp"), "-n", "2"});
  CHECK(epi.out.find("found: a -> x, b -> y, c -> x*y") != std::string::npos);
}

TEST_CASE("rewriting fixtures on the command line") {
  std::string path = (std::filesystem::temp_directory_path() / "freeiso_z2.rws").string();
  std::ofstream(path) << "order: a a^-1 b b^-1\nrule: a*a^-1 -> 1\nrule: a^-1*a -> 1\nrule: b*b^-1 -> 1\n"
                         "rule: b^-1*b -> 1\nrule: b*a -> a*b\nrule: b*a^-1 -> a^-1*b\n"
                         "rule: b^-1*a -> a*b^-1\nrule: b^-1*a^-1 -> a^-1*b^-1\n";
  auto ok = run({"wp", corpus("z2.fp"), "--word", "b*a*b^-1*a^-1", "--rewriting", path});
  CHECK(ok.exit_code == 0);
  auto wrong = run({"wp", "<a,b | >", "--word", "a", "--rewriting", path});
  CHECK(wrong.exit_code == cli::kExitError);
  CHECK(wrong.err.find("rejected") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("reproducible output does not depend on workers") {
  auto one = run({"embed-free", corpus("z2.fp"), "-n", "2", "--json", "--reproducible", "--workers", "1"});
  auto four = run({"embed-free", corpus("z2.fp"), "-n", "2", "--json", "--reproducible", "--workers", "4"});
  CHECK(one.out == four.out);
  CHECK(one.exit_code == 0);
}
