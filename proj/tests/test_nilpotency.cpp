#include <doctest.h>

#include <cstdlib>

#include "nilbench/errors.hpp"
#include "nilbench/gallery.hpp"
#include "nilbench/nilpotency.hpp"

using namespace nilbench;

namespace {

bool oracle_member(const Semigroup& s, Mode mode) {
  return !oracle_not_nilpotent(s, mode, mode == Mode::MN ? 2 : 3).has_value();
}

}  // namespace

TEST_CASE("lambda step") {
  Semigroup c3 = build_cyclic(3);
  const Elem g = c3.generators()[0].element;
  auto rows = lambda_sequences(c3, {g, c3.mul(g, g)}, {g, g});
  CHECK(rows.size() == 3);
  CHECK(rows[1][0] == rows[1][1]);
  CHECK_THROWS_AS(lambda_step(c3, {g}, g), BadParameter);
}

TEST_CASE("M3 is not Mal'cev nilpotent, with a replayable witness") {
  Semigroup s = build_m3();
  MembershipResult r = check_mn(s);
  REQUIRE(r.verdict == Verdict::NotMember);
  REQUIRE(r.tuple);
  CHECK(replay(s, *r.tuple));
  REQUIRE(r.rotation);
  CHECK(r.rotation->t == 2);
  CHECK(replay(s, *r.rotation));
  CHECK(!oracle_member(s, Mode::MN));
}

TEST_CASE("M2 is Mal'cev but not strongly Mal'cev nilpotent") {
  Semigroup s = build_m2();
  CHECK(check_mn(s).verdict == Verdict::Member);
  MembershipResult r = check_smn(s);
  REQUIRE(r.verdict == Verdict::NotMember);
  REQUIRE(r.rotation);
  CHECK(r.rotation->t == 3);
  CHECK(replay(s, *r.tuple));
}

TEST_CASE("M1 is strongly Mal'cev nilpotent") {
  Semigroup s = build_m1();
  CHECK(check_smn(s).verdict == Verdict::Member);
  CHECK(oracle_member(s, Mode::SMN));
}

TEST_CASE("tampered witnesses do not replay") {
  Semigroup s = build_m3();
  MembershipResult r = check_mn(s);
  REQUIRE(r.tuple);
  TupleCycleWitness w = *r.tuple;
  w.tuple[1] = w.tuple[0];
  CHECK(!replay(s, w));
  w = *r.tuple;
  w.words.clear();
  CHECK(!replay(s, w));
}

TEST_CASE("oracle classes on groups") {
  NilpotencyClasses c = nilpotency_classes(build_cyclic(6), 3);
  CHECK(c.mn_class == 1u);
  CHECK(c.smn_class == 1u);
  NilpotencyClasses s3 = nilpotency_classes(build_s3(), 2);
  CHECK(!s3.mn_class.has_value());
}

TEST_CASE("oracle respects the budget") {
  Budget tiny{10, 10};
  CHECK_THROWS_AS(oracle_run(build_m1(), 3, tiny), BudgetExceeded);
}

TEST_CASE("budget from the environment") {
  setenv("NILBENCH_BUDGET", "123:456", 1);
  Budget b = Budget::from_env();
  CHECK(b.max_nodes == 123);
  CHECK(b.max_evaluations == 456);
  setenv("NILBENCH_BUDGET", "77", 1);
  CHECK(Budget::from_env().max_nodes == 77);
  setenv("NILBENCH_BUDGET", "x", 1);
  CHECK_THROWS_AS(Budget::from_env(), BadParameter);
  unsetenv("NILBENCH_BUDGET");
}

TEST_CASE("MN* together with BG_nil matches MN") {
  for (const char* id : {"M1", "M2", "M3"}) {
    Semigroup s = build_gallery(id);
    GreensStructure g = greens_structure(s);
    PrincipalSeries ps = principal_series(s, g);
    const bool bg_nil = check_bg_nil(s, g, ps).bg_nil;
    CHECK((check_mn_star(s) && bg_nil) == (check_mn(s).verdict == Verdict::Member));
    CHECK(check_smn_circ_t(s, 2) == (check_mn(s).verdict == Verdict::Member));
  }
}

TEST_CASE("Rees fast path") {
  ReesDesc ok{cyclic_group(2), 2, 2, {0, kThetaIndex, kThetaIndex, 0}};
  FastPathVerdict v = rees_fast_path(ok);
  CHECK(v.mn == Verdict::Member);
  CHECK(v.smn == Verdict::Member);
  ReesDesc full{GroupTable::trivial(), 2, 2, {0, 0, 0, 0}};
  CHECK(rees_fast_path(full).mn == Verdict::NotMember);
  ReesDesc s3{symmetric3_group(), 1, 1, {0}};
  CHECK(rees_fast_path(s3).mn == Verdict::NotMember);
  ReesDesc bad{GroupTable::trivial(), 2, 2, {0, 0, 0}};
  CHECK_THROWS_AS(validate_rees(bad), MalformedRees);
  ReesDesc zero_row{GroupTable::trivial(), 2, 2, {0, kThetaIndex, 0, kThetaIndex}};
  CHECK_THROWS_AS(validate_rees(zero_row), MalformedRees);
}

TEST_CASE("block group failure carries a witness") {
  Semigroup s = build_s3();
  GreensStructure g = greens_structure(s);
  BgNilReport r = check_bg_nil(s, g, principal_series(s, g));
  CHECK(r.bg);
  CHECK(!r.bg_nil);
  REQUIRE(r.failure);
  REQUIRE(r.failure->witness);
  CHECK(replay(s, *r.failure->witness));
}
