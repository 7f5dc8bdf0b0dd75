#include <doctest.h>

#include "nilbench/errors.hpp"
#include "nilbench/gallery.hpp"
#include "nilbench/lm_representation.hpp"

using namespace nilbench;

TEST_CASE("orbit notation") {
  PartialMap c = parse_orbits("(1,2,#)(3,4,#)", 4);
  CHECK(c.to_image_list() == "[2,#,4,#]");
  CHECK(format_map(c) == "(1,2,#)(3,4,#)");
  PartialMap cyc = parse_orbits("(1,2,3)", 4);
  CHECK(cyc.to_image_list() == "[2,3,1,#]");
  CHECK(parse_orbits("(1,2,3)(4)", 4) == from_orbits(4, orbit_decomposition(parse_orbits("(1,2,3)(4)", 4))));
  CHECK(parse_orbits("0", 3).is_zero());
  CHECK(parse_orbits("(1,2,\xCE\xB8)", 2) == parse_orbits("(1,2,0)", 2));
}

TEST_CASE("image lists") {
  CHECK(parse_image_list("[2,3,#,1]", 4).to_image_list() == "[2,3,#,1]");
  CHECK_THROWS_AS(parse_image_list("[5]", 4), SemanticError);
  CHECK_THROWS_AS(parse_image_list("[1,2", 2), ParseError);
}

TEST_CASE("orbit notation errors") {
  CHECK_THROWS_AS(parse_orbits("(1,5)", 4), SemanticError);
  CHECK_THROWS_AS(parse_orbits("(1,2)(2,3)", 4), SemanticError);
  CHECK_THROWS_AS(parse_orbits("(1,2", 4), ParseError);
  CHECK_THROWS_AS(orbit_decomposition(PartialMap::from_one_based({1, 1})), BadParameter);
}

TEST_CASE("link patterns") {
  LinkPattern ok{{{0, 1}, {2, 3}}};
  LinkPattern bad{{{0, 1}, {0, 2}}};
  CHECK(ok.is_consistent());
  CHECK(!bad.is_consistent());
  CHECK(has_link_pattern(parse_orbits("(1,2,#)(3,4,#)", 4), ok));
}

TEST_CASE("Gamma is a right action with a cocycle") {
  Semigroup s = build_gallery("M1");
  GreensStructure g = greens_structure(s);
  PrincipalSeries ps = principal_series(s, g);
  std::size_t checked = 0;
  for (std::size_t p = 0; p < ps.length(); ++p) {
    if (!g.j_regular[ps.layers[p]]) continue;
    LayerRep rep = gamma_psi(s, g, ps, p);
    CHECK(rep.right_action);
    CHECK(rep.cocycle);
    CHECK(rep.injective);
    for (Elem x = 0; x < s.size(); ++x)
      for (Elem y = 0; y < s.size(); ++y) CHECK(rep.gamma[s.mul(x, y)] == rep.gamma[x] * rep.gamma[y]);
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("non-inverse layer is rejected") {
  Semigroup s = close_generators({{"a", PartialMap::from_one_based({1, 1})}, {"b", PartialMap::from_one_based({2, 2})}});
  GreensStructure g = greens_structure(s);
  PrincipalSeries ps = principal_series(s, g);
  CHECK_THROWS_AS(gamma_psi(s, g, ps, 0), NotInverseSquare);
}
