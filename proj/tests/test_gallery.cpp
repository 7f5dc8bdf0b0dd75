#include <doctest.h>

#include "nilbench/closure.hpp"
#include "nilbench/errors.hpp"
#include "nilbench/gallery.hpp"
#include "nilbench/green.hpp"

using namespace nilbench;

TEST_CASE("gallery sizes") {
  CHECK(build_brandt(3).size() == 10);
  CHECK(build_cyclic(6).size() == 6);
  CHECK(build_dihedral(4).size() == 8);
  CHECK(build_q8().size() == 8);
  CHECK(build_s3().size() == 6);
  CHECK(build_gallery("N1").size() == build_n(6).size());
}

TEST_CASE("the M3 generators") {
  auto gens = gallery_generators("M3");
  REQUIRE(gens.size() >= 3);
  CHECK(gens[0].first == "c");
  CHECK(gens[0].second.degree() == 4);
  CHECK(gens[0].second.is_partial_injection());
}

TEST_CASE("S(U) idempotents commute") {
  Semigroup s = build_gallery("SU", {"3", "(1,2,3)"});
  GreensStructure g = greens_structure(s);
  for (Elem e : g.idempotents)
    for (Elem f : g.idempotents) CHECK(s.mul(e, f) == s.mul(f, e));
}

TEST_CASE("every listed member with fixed parameters builds") {
  for (const auto& m : gallery_members()) CHECK(m.semigroup.size() > 0);
}

TEST_CASE("bad parameters") {
  CHECK_THROWS_AS(build_gallery("Sp", {"4"}), BadParameter);
  CHECK_THROWS_AS(build_gallery("N", {"1"}), BadParameter);
  CHECK_THROWS_AS(build_gallery("N", {"x"}), BadParameter);
  CHECK_THROWS_AS(build_gallery("M1", {"2"}), BadParameter);
  CHECK_THROWS_AS(build_gallery("nope"), BadParameter);
  CHECK_THROWS_AS(build_gallery("SU", {"3", "(1,2)"}), BadParameter);
  CHECK_THROWS_AS(build_dihedral(2), BadParameter);
}

TEST_CASE("theta union") {
  Semigroup t = close_generators({{"1", PartialMap::identity(1)}, {"0", PartialMap(1)}});
  REQUIRE(t.zero());
  std::vector<PartialMap> delta(t.size());
  for (Elem x = 0; x < t.size(); ++x) delta[x] = x == *t.zero() ? PartialMap(3) : PartialMap::identity(3);
  Semigroup u = build_theta_union(3, t, delta);
  CHECK(u.size() == t.size() + 9);

  auto bad = delta;
  bad[0] = PartialMap(2);
  CHECK_THROWS_AS(build_theta_union(3, t, bad), InvalidDelta);
  bad = delta;
  for (auto& d : bad) d = PartialMap::identity(3);
  CHECK_THROWS_AS(build_theta_union(3, t, bad), InvalidDelta);
}
