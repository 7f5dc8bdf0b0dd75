#include <doctest.h>

#include <random>

#include "nilbench/automaton.hpp"
#include "nilbench/closure.hpp"
#include "nilbench/errors.hpp"

using namespace nilbench;

TEST_CASE("words") {
  CHECK(parse_word("aB") == Word{1, -2});
  CHECK(parse_word("abBA").empty());
  CHECK(free_reduce(Word{1, 2, -2, 3}) == Word{1, 3});
  CHECK(format_word(inverse_word(parse_word("ab"))) == "BA");
  CHECK_THROWS_AS(parse_word("a1"), ParseError);
}

TEST_CASE("rank modulo p") {
  std::vector<std::vector<std::int64_t>> m{{1, -1}, {6, 0}};
  CHECK(rank_mod_p(m, 2, 5) == 2);
  CHECK(rank_mod_p(m, 2, 2) == 1);
  CHECK(rank_mod_p(m, 2, 3) == 1);
  CHECK(is_prime(7));
  CHECK_FALSE(is_prime(9));
}

TEST_CASE("integer invariants") {
  auto inv = integer_invariants({{2, 0}, {0, 3}}, 2);
  CHECK(inv.rational_rank == 2);
  CHECK(inv.primes == std::vector<std::uint64_t>{2, 3});
}

TEST_CASE("closures of the six-cycle") {
  InverseAutomaton b6 = build_family(Family::B, 6);
  CHECK(p_closure(b6, 2).automaton.size() == 2);
  CHECK(p_closure(b6, 3).automaton.size() == 3);
  NilClosure n = nil_closure(b6);
  CHECK(n.automaton.size() == 6);
  CHECK(n.exact);
  CHECK_THROWS_AS(p_closure(b6, 4), NotPrime);
}

TEST_CASE("prime-power cycles are closed") {
  for (std::size_t l : {4u, 5u}) {
    InverseAutomaton b = build_family(Family::B, l);
    CHECK(isomorphic(nil_closure(b).automaton, b));
  }
}

TEST_CASE("extendibility") {
  CHECK(is_gnil_extendible(build_family(Family::A, 6)).verdict == Extendible::No);
  CHECK(is_gnil_extendible(build_family(Family::A, 15)).verdict == Extendible::No);
  CHECK(is_gnil_extendible(build_family(Family::B, 6)).verdict == Extendible::Yes);
  auto e = is_gnil_extendible(build_family(Family::A, 6));
  REQUIRE(e.witness);
  CHECK(e.witness->first != e.witness->second);
}

TEST_CASE("fold of a tree basis returns the automaton") {
  std::mt19937 rng(7);
  for (int round = 0; round < 30; ++round) {
    const std::size_t n = 1 + rng() % 8, letters = 2;
    std::vector<Edge> edges;
    for (std::uint32_t v = 1; v < n; ++v) edges.push_back({std::uint32_t(rng() % v), rng() % letters, v});
    for (int k = 0; k < 4; ++k) edges.push_back({std::uint32_t(rng() % n), rng() % letters, std::uint32_t(rng() % n)});
    InverseAutomaton a = trim(fold_graph(n, letters, edges, 0).automaton).automaton;
    CHECK(isomorphic(fold(tree_basis(a), letters), a));
  }
}

TEST_CASE("determinism conflicts") {
  InverseAutomaton a(2, 1);
  a.add_edge(0, 0, 1);
  CHECK_THROWS_AS(a.add_edge(0, 0, 0), NotInverse);
  CHECK(a.accepts(Word{}));
  CHECK(a.read(0, Word{1}) == 1);
  CHECK(a.read(1, Word{-1}) == 0);
  CHECK(a.read(1, Word{1}) == kNoState);
}
