#include <doctest.h>

#include "nilbench/closure.hpp"
#include "nilbench/errors.hpp"
#include "nilbench/gallery.hpp"
#include "nilbench/schutzenberger.hpp"

using namespace nilbench;

TEST_CASE("Schutzenberger graphs of a Brandt semigroup") {
  Semigroup b = build_brandt(3);
  auto graphs = schutz_graphs(b);
  std::size_t right = 0;
  for (const auto& g : graphs) {
    CHECK(g.is_inverse);
    if (g.side == Side::Right) ++right;
  }
  CHECK(right == 4);
  for (const auto& g : graphs) {
    if (g.size() != 3) continue;
    InverseAutomaton a = to_automaton(g, 0);
    CHECK(a.size() == 3);
    CHECK(is_gnil_extendible(a).verdict == Extendible::Yes);
  }
}

TEST_CASE("vertex lookup") {
  Semigroup s = build_m3();
  GreensStructure g = greens_structure(s);
  SchutzGraph sg = schutz_graph(s, g, Side::Right, g.r[g.idempotents[0]]);
  for (std::uint32_t v = 0; v < sg.size(); ++v) CHECK(sg.vertex_of(sg.vertices[v]) == v);
  CHECK(sg.vertex_of(kNoElem) == kNoVertex);
}

TEST_CASE("L-set intersections") {
  Semigroup s = build_m3();
  for (const auto& g : schutz_graphs(s)) {
    if (g.size() < 2) continue;
    // a letter that maps 0 somewhere gives a nonempty single-pair language
    for (std::size_t a = 0; a < g.letters.size(); ++a)
      if (g.target(0, a) != kNoVertex) CHECK(l_intersection_nonempty(g, {{0, g.target(0, a)}}));
    CHECK_THROWS_AS(l_intersection_nonempty(g, {}), BadParameter);
    CHECK_THROWS_AS(l_intersection_nonempty(g, {{0, std::uint32_t(g.size())}}), BadParameter);
  }
}

TEST_CASE("R-class predicates follow the engine on small members") {
  for (const char* id : {"M1", "M2", "M3"}) {
    Semigroup s = build_gallery(id);
    bool mn = true, smn = true;
    for (const auto& g : schutz_graphs(s)) {
      if (g.side != Side::Right) continue;
      mn = mn && rclass_nilpotent(g, Variant::H, false);
      smn = smn && rclass_nilpotent(g, Variant::H, true);
    }
    CHECK(mn == (check_mn(s).verdict == Verdict::Member));
    CHECK(smn == (check_smn(s).verdict == Verdict::Member));
  }
}

TEST_CASE("dot output names every vertex") {
  Semigroup s = build_brandt(2);
  auto graphs = schutz_graphs(s);
  std::string dot = to_dot(graphs.front(), s);
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("->") != std::string::npos);
}

TEST_CASE("non-inverse graph is refused") {
  SchutzGraph g;
  g.vertices = {0, 1};
  g.letters = {"a"};
  g.edges = {1, 1};
  g.h_class = {0, 1};
  g.is_inverse = false;
  CHECK_THROWS_AS(to_automaton(g), NotInverse);
}
