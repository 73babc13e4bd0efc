#include <benchmark/benchmark.h>

#include <random>

#include "freeiso/decision.hpp"
#include "freeiso/presentation.hpp"
#include "freeiso/rewriting.hpp"
#include "freeiso/stallings.hpp"
#include "freeiso/word_problem.hpp"

using namespace freeiso;

namespace {

Word gen(GeneratorId g, int s = 1) { return Word::generator(g, s); }

LetterString random_letters(std::mt19937& rng, std::size_t rank, std::size_t len) {
  std::uniform_int_distribution<std::uint32_t> code(0, static_cast<std::uint32_t>(2 * rank - 1));
  LetterString s(len);
  for (auto& l : s) l = Letter::from_code(code(rng));
  return s;
}

Presentation z2() { return Presentation({"a", "b"}, {commutator(gen(0), gen(1))}); }
Presentation trefoil() {
  return Presentation({"a", "b"}, {power(gen(0), 2) * power(gen(1), -3)});
}
Presentation three_gen() { return Presentation({"a", "b", "c"}, {gen(2, -1) * gen(0) * gen(1)}); }

}  // namespace

static void BM_FreeReduction(benchmark::State& state) {
  std::mt19937 rng(7);
  LetterString s = random_letters(rng, 2, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Word::reduce(s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FreeReduction)->Arg(64)->Arg(1024)->Arg(16384);

static void BM_WordEnumeration(benchmark::State& state) {
  for (auto _ : state) {
    WordEnumerator e(2, static_cast<std::size_t>(state.range(0)));
    std::size_t n = 0;
    while (e.next()) ++n;
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_WordEnumeration)->Arg(6)->Arg(8);

static void BM_SmithNormalForm(benchmark::State& state) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> entry(-9, 9);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  IntegerMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a.at(i, j) = entry(rng);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(a));
}
BENCHMARK(BM_SmithNormalForm)->Arg(3)->Arg(8)->Arg(16);

static void BM_StallingsFold(benchmark::State& state) {
  std::mt19937 rng(3);
  std::vector<Word> tuple;
  for (int i = 0; i < state.range(0); ++i) tuple.push_back(Word::reduce(random_letters(rng, 3, 12)));
  for (auto _ : state) benchmark::DoNotOptimize(FoldedGraph::build(tuple, 3));
}
BENCHMARK(BM_StallingsFold)->Arg(2)->Arg(8)->Arg(32);

static void BM_YesPartCommutator(benchmark::State& state) {
  Presentation p({"a", "b"}, {gen(1)});
  Budget b;
  Word w = commutator(gen(0), gen(1));
  for (auto _ : state) benchmark::DoNotOptimize(yes_part(p, w, b));
}
BENCHMARK(BM_YesPartCommutator);

static void BM_YesPartExhaustTrefoil(benchmark::State& state) {
  Presentation p = trefoil();
  Budget b;
  auto index = make_yes_part_index(p, b);
  Word w = commutator(gen(0), gen(1));
  for (auto _ : state) benchmark::DoNotOptimize(yes_part(p, *index, w, b));
}
BENCHMARK(BM_YesPartExhaustTrefoil);

static void BM_KnuthBendixZ2(benchmark::State& state) {
  Presentation p = z2();
  Budget b;
  for (auto _ : state) benchmark::DoNotOptimize(knuth_bendix(p, b));
}
BENCHMARK(BM_KnuthBendixZ2);

static void BM_DecideFreeThreeGenerators(benchmark::State& state) {
  Presentation p = three_gen();
  Budget b;
  for (auto _ : state) {
    WordProblemOracle oracle = compose_oracle(p, b);
    benchmark::DoNotOptimize(decide_free(oracle, 2, b));
  }
}
BENCHMARK(BM_DecideFreeThreeGenerators)->Unit(benchmark::kMillisecond);

static void BM_EmbedFreeZ2(benchmark::State& state) {
  Presentation p = z2();
  Budget b;
  for (auto _ : state) {
    WordProblemOracle oracle = compose_oracle(p, b);
    benchmark::DoNotOptimize(embeds_in_free(oracle, 2, b));
  }
}
BENCHMARK(BM_EmbedFreeZ2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
