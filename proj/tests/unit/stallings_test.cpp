#include "common.hpp"
#include "freeiso/stallings.hpp"

namespace {

FoldedGraph fold(std::size_t rank, std::initializer_list<const char*> words) {
  std::vector<Word> tuple;
  for (const char* w : words) tuple.push_back(F(rank, w));
  return FoldedGraph::build(tuple, rank);
}

}  // namespace

TEST_CASE("wedge of loops") {
  FoldedGraph g = fold(2, {"x", "y"});
  CHECK(g.vertex_count() == 1);
  CHECK(g.rank() == 2);
  CHECK(g.basis() == std::vector<Word>{F(2, "x"), F(2, "y")});
  auto e = g.express(F(2, "x*y^-1"));
  REQUIRE(e);
  CHECK(*e == F(2, "x*y^-1"));
}

TEST_CASE("x^2 and x^3 generate <x>") {
  FoldedGraph g = fold(1, {"x^2", "x^3"});
  CHECK(g.rank() == 1);
  CHECK(g.vertex_count() == 1);
  CHECK(g.contains(F(1, "x")));
  CHECK(g.basis() == std::vector<Word>{F(1, "x")});
  auto e = g.express(F(1, "x^5"));
  REQUIRE(e);
  CHECK(*e == F(1, "x^5"));
  auto back = g.express_in_generators(F(1, "x"));
  REQUIRE(back);
  CHECK(substitute(*back, std::vector<Word>{F(1, "x^2"), F(1, "x^3")}) == F(1, "x"));
}

TEST_CASE("conjugates of powers of y") {
  FoldedGraph g = fold(2, {"x*y*x^-1", "x*y^2*x^-1"});
  CHECK(g.rank() == 1);
  CHECK(g.contains(F(2, "x*y^5*x^-1")));
  CHECK_FALSE(g.contains(F(2, "y")));
}

TEST_CASE("trivial subgroup and membership") {
  FoldedGraph empty = FoldedGraph::build(std::vector<Word>{}, 2);
  CHECK(empty.rank() == 0);
  CHECK(empty.basis().empty());
  CHECK(empty.vertex_count() == 1);
  CHECK(empty.contains(Word()));
  CHECK(fold(2, {"1"}).rank() == 0);

  FoldedGraph even = fold(1, {"x^2"});
  CHECK(even.contains(Word()));
  CHECK_FALSE(even.contains(F(1, "x")));
  CHECK_FALSE(even.express(F(1, "x")).has_value());
  CHECK(fold(1, {"x^2", "x^3"}).contains(F(1, "x")));
}

TEST_CASE("fold order does not matter") {
  std::vector<Word> tuple{F(2, "x*y*x^-1"), F(2, "x^2"), F(2, "y*x*y")};
  FoldedGraph a = FoldedGraph::build(tuple, 2);
  FoldedGraph b = FoldedGraph::build(tuple, 2, {{7, 6, 5, 4, 3, 2, 1, 0}});
  CHECK(a.same_shape(b));
  CHECK_THROWS_AS(FoldedGraph::build(tuple, 2, {{0, 1}}), PreconditionError);
}

TEST_CASE("edge list export") {
  FoldedGraph g = fold(2, {"x", "y"});
  std::vector<std::string> names{"x", "y"};
  CHECK(g.to_edge_list(names) == "base 0\n0 0 x\n0 0 y\n");
}

TEST_CASE("rank mismatch is rejected") {
  CHECK_THROWS_AS(FoldedGraph::build(std::vector<Word>{F(2, "y")}, 1), RankMismatch);
}
