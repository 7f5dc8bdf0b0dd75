#include <doctest.h>

#include <algorithm>

#include "nilbench/errors.hpp"
#include "nilbench/gallery.hpp"
#include "nilbench/lm_representation.hpp"
#include "nilbench/omega.hpp"
#include "nilbench/semigroup.hpp"

using namespace nilbench;

TEST_CASE("partial maps compose as a right action") {
  PartialMap a = PartialMap::from_one_based({2, 3, 0});
  PartialMap b = PartialMap::from_one_based({3, 1, 2});
  PartialMap ab = a * b;
  CHECK(ab.to_image_list() == "[1,2,#]");
  CHECK(a.rank() == 2);
  CHECK(a.is_partial_injection());
  CHECK(!PartialMap::from_one_based({1, 1, 0}).is_partial_injection());
  CHECK((a * a.inverse()).is_idempotent());
  CHECK(PartialMap(3).is_zero());
}

TEST_CASE("closure of a cyclic group") {
  Semigroup c = close_generators({{"g", PartialMap::from_one_based({2, 3, 1})}});
  CHECK(c.size() == 3);
  CHECK(c.identity().has_value());
  CHECK(is_associative(c));
  CHECK(c.word_string(c.generators()[0].element) == "g");
  CHECK(c.find(PartialMap::identity(3)).has_value());
}

TEST_CASE("closure respects the cap") {
  CHECK_THROWS_AS(close_generators(gallery_generators("N", {"8"}), 100), CapExceeded);
  CHECK_THROWS_AS(close_generators({}), SemanticError);
  CHECK_THROWS_AS(close_generators({{"a", PartialMap(2)}, {"b", PartialMap(3)}}), DegreeMismatch);
}

TEST_CASE("closure is generator-order independent") {
  auto gens = gallery_generators("M3");
  Semigroup a = close_generators(gens);
  std::reverse(gens.begin(), gens.end());
  Semigroup b = close_generators(gens);
  REQUIRE(a.size() == b.size());
  for (Elem x = 0; x < a.size(); ++x) CHECK(b.find(a.map(x)).has_value());
}

TEST_CASE("adjoin identity") {
  Semigroup z = close_generators({{"z", PartialMap::from_one_based({2, 0})}});
  REQUIRE(z.size() == 2);
  CHECK(!z.identity());
  Semigroup z1 = adjoin_identity(z);
  CHECK(z1.size() == 3);
  REQUIRE(z1.identity());
  for (Elem x = 0; x < z1.size(); ++x) CHECK(z1.mul(*z1.identity(), x) == x);
  Semigroup c = close_generators({{"g", PartialMap::from_one_based({2, 1})}});
  CHECK(adjoin_identity(c).size() == c.size());
}

TEST_CASE("omega powers") {
  Semigroup s = build_gallery("M2");
  OmegaData om = omega_data(s);
  for (Elem x = 0; x < s.size(); ++x) {
    CHECK(s.is_idempotent(om.omega[x]));
    CHECK(s.mul(x, om.omega_minus_one[x]) == om.omega[x]);
    CHECK(s.mul(om.omega_minus_one[x], x) == om.omega[x]);
  }
}

TEST_CASE("omega iteration in an abelian group collapses") {
  Semigroup c2 = close_generators({{"g", PartialMap::from_one_based({2, 1})}});
  const Elem g = c2.generators()[0].element;
  const Elem one = *c2.identity();
  Substitution f = lambda_substitution(2);
  auto y = omega_iterate(c2, f, {g, one}, {one, one});
  CHECK(y[0] == y[1]);
}

TEST_CASE("omega iteration agrees with naive iteration") {
  Semigroup s = close_generators({{"a", PartialMap::from_one_based({2, 0, 1})}, {"b", PartialMap::from_one_based({1, 1, 0})}});
  REQUIRE(s.size() <= 8);
  Substitution f = lambda_substitution(2);
  std::size_t steps = 1;
  for (std::size_t k = 2; k <= s.size() + 1; ++k) steps *= k;
  std::size_t compared = 0;
  for (Elem x = 0; x < s.size(); ++x)
    for (Elem z = 0; z < s.size(); ++z) {
      Lasso lasso;
      auto fixed = omega_iterate(s, f, {x, z}, {z, x}, &lasso);
      std::vector<Elem> naive{x, z}, again = fixed;
      for (std::size_t k = 0; k < lasso.rho; ++k) again = apply_substitution(s, f, again, {z, x});
      CHECK(again == fixed);
      if (steps % lasso.rho != 0 || steps < lasso.mu) continue;
      for (std::size_t k = 0; k < steps; ++k) naive = apply_substitution(s, f, naive, {z, x});
      CHECK(naive == fixed);
      ++compared;
    }
  CHECK(compared > 0);
}

TEST_CASE("digest is stable") {
  CHECK(build_gallery("M1").digest() == build_gallery("M1").digest());
  CHECK(build_gallery("M1").digest() != build_gallery("M2").digest());
}
