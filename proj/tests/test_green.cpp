#include <doctest.h>

#include <set>

#include "nilbench/errors.hpp"
#include "nilbench/gallery.hpp"
#include "nilbench/green.hpp"

using namespace nilbench;

TEST_CASE("Green's relations of a Brandt semigroup") {
  Semigroup b = build_brandt(3);
  GreensStructure g = greens_structure(b);
  CHECK(b.size() == 10);
  CHECK(g.num_j == 2);
  CHECK(g.num_r == 4);
  CHECK(g.num_l == 4);
  CHECK(g.idempotents.size() == 4);
  for (Elem x = 0; x < b.size(); ++x) CHECK(g.j_regular[g.j[x]]);
}

TEST_CASE("H is R intersect L and J is a union of R-classes") {
  Semigroup s = build_gallery("M2");
  GreensStructure g = greens_structure(s);
  for (Elem x = 0; x < s.size(); ++x)
    for (Elem y = 0; y < s.size(); ++y) {
      CHECK((g.h[x] == g.h[y]) == (g.r[x] == g.r[y] && g.l[x] == g.l[y]));
      if (g.r[x] == g.r[y] || g.l[x] == g.l[y]) CHECK(g.j[x] == g.j[y]);
    }
}

TEST_CASE("principal series consists of ideals") {
  Semigroup s = build_gallery("N", {"4"});
  GreensStructure g = greens_structure(s);
  PrincipalSeries ps = principal_series(s, g);
  CHECK(ps.length() == g.num_j);
  for (std::size_t p = 0; p < ps.length(); ++p)
    for (Elem x = 0; x < s.size(); ++x) {
      if (!ps.in_ideal(g, x, p)) continue;
      for (const auto& gen : s.generators()) {
        CHECK(ps.in_ideal(g, s.mul(x, gen.element), p));
        CHECK(ps.in_ideal(g, s.mul(gen.element, x), p));
      }
    }
}

TEST_CASE("Rees coordinatization reproduces the product") {
  Semigroup s = build_gallery("M1");
  GreensStructure g = greens_structure(s);
  for (std::uint32_t j = 0; j < g.num_j; ++j) {
    if (!g.j_regular[j]) continue;
    ReesCoordinatization rc = rees_coordinatize(s, g, j);
    for (Elem x : g.j_members[j])
      for (Elem y : g.j_members[j]) {
        const auto cx = rc.coord[x], cy = rc.coord[y];
        const std::uint32_t p = rc.p(cx.col, cy.row);
        const Elem xy = s.mul(x, y);
        if (p == kThetaIndex) {
          CHECK(g.j[xy] != j);
        } else {
          const std::uint32_t gg = rc.group.mul(rc.group.mul(cx.g, p), cy.g);
          CHECK(xy == rc.element(gg, cx.row, cy.col));
        }
      }
  }
}

TEST_CASE("group nilpotency classes") {
  CHECK(group_nilpotency_class(GroupTable::trivial()) == 0u);
  CHECK(group_nilpotency_class(cyclic_group(6)) == 1u);
  CHECK(group_nilpotency_class(GroupTable::from_semigroup(build_dihedral(4))) == 2u);
  CHECK(group_nilpotency_class(GroupTable::from_semigroup(build_q8())) == 2u);
  CHECK(!group_nilpotency_class(symmetric3_group()).has_value());
  CHECK_THROWS_AS(GroupTable::from_semigroup(build_brandt(2)), NotAGroup);
}
