#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "folmod/tower.hpp"

using namespace folmod;

namespace {

Tower sqrt2_tower() {
  Tower t;
  t.extend({TowerElem(-2), TowerElem(0), TowerElem(1)}, Rat(1), Rat(2), Rat(0),
           Rat(0));
  return t;
}

}  // namespace

TEST_CASE("quadratic adjunction") {
  Tower t = sqrt2_tower();
  TowerElem r2 = te_gen(1);
  CHECK(*te_is_rational(te_mul(t, r2, r2)) == Rat(2));
  CHECK(te_sign(t, te_sub(r2, TowerElem(1))) == 1);
  CHECK(te_sign(t, te_sub(TowerElem(1), r2)) == -1);
  CHECK(te_sign(t, te_sub(r2, r2)) == 0);
}

TEST_CASE("two-level tower arithmetic") {
  Tower t = sqrt2_tower();
  t.extend({TowerElem(-3), TowerElem(0), TowerElem(1)}, Rat(1), Rat(2), Rat(0),
           Rat(0));
  TowerElem r2 = te_gen(1), r3 = te_gen(2);
  TowerElem s = te_add(r2, r3);
  CHECK(te_mul(t, s, s) ==
        te_add(TowerElem(5), te_mul(t, TowerElem(2), te_mul(t, r2, r3))));
  // 1/(r2+r3) = r3-r2
  TowerElem inv = te_inv(t, s);
  CHECK(inv == te_sub(r3, r2));
  CHECK(te_mul(t, s, inv) == TowerElem(1));
  CHECK(te_sign(t, te_sub(r2, r3)) == -1);
  // norm of 1+r2
  CHECK(*te_is_rational(
            te_mul(t, te_add(TowerElem(1), r2), te_sub(TowerElem(1), r2))) ==
        Rat(-1));
}

TEST_CASE("field axioms on random elements") {
  Tower t = sqrt2_tower();
  t.extend({TowerElem(-3), TowerElem(0), TowerElem(1)}, Rat(1), Rat(2), Rat(0),
           Rat(0));
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> d(-6, 6);
  auto rnd = [&] {
    TowerElem v(d(rng));
    v = te_add(v, te_scale_rat(te_gen(1), Rat(d(rng))));
    v = te_add(v, te_scale_rat(te_gen(2), Rat(d(rng), 3)));
    return v;
  };
  for (int k = 0; k < 60; ++k) {
    TowerElem a = rnd(), b = rnd(), c = rnd();
    CHECK(te_add(a, b) == te_add(b, a));
    CHECK(te_mul(t, a, b) == te_mul(t, b, a));
    CHECK(te_mul(t, a, te_add(b, c)) ==
          te_add(te_mul(t, a, b), te_mul(t, a, c)));
    CHECK(te_mul(t, te_mul(t, a, b), c) == te_mul(t, a, te_mul(t, b, c)));
    if (!a.is_zero()) {
      CHECK(te_mul(t, a, te_inv(t, a)) == TowerElem(1));
      CHECK(te_div(t, b, a) == te_mul(t, b, te_inv(t, a)));
    }
    CHECK(te_add(a, te_neg(a)).is_zero());
  }
}

TEST_CASE("json round trip") {
  Tower t = sqrt2_tower();
  t.extend({TowerElem(-3), TowerElem(0), TowerElem(1)}, Rat(1), Rat(2), Rat(0),
           Rat(0));
  TowerElem r2 = te_gen(1), r3 = te_gen(2);
  TowerElem mix =
      te_add(te_mul(t, r2, r3), te_div(t, r3, te_add(r2, TowerElem(7))));
  std::string js = te_to_json(t, mix);
  auto [t2, back] = te_from_json(js);
  CHECK(back == mix);
  CHECK(te_to_json(t2, back) == js);
}

TEST_CASE("enclosure refinement") {
  Tower t = sqrt2_tower();
  auto [lo, hi] = te_enclosure(t, te_gen(1), Rat(1, 1000000));
  CHECK(hi - lo <= Rat(1, 1000000));
  CHECK(lo < Rat(1414214, 1000000));
  CHECK(hi > Rat(1414213, 1000000));
}

TEST_CASE("complex generator has no sign") {
  Tower tc;
  tc.extend({TowerElem(1), TowerElem(0), TowerElem(1)}, Rat(0), Rat(0),
            Rat(1, 2), Rat(2));
  TowerElem i = te_gen(1);
  CHECK(*te_is_rational(te_mul(tc, i, i)) == Rat(-1));
  CHECK_THROWS_AS(te_sign(tc, i), NotRealError);
}

TEST_CASE("degree cap") {
  Tower t;
  t.degree_cap = 3;
  t.extend({TowerElem(-2), TowerElem(0), TowerElem(1)}, Rat(1), Rat(2), Rat(0),
           Rat(0));
  CHECK_THROWS_AS(t.extend({TowerElem(-3), TowerElem(0), TowerElem(1)}, Rat(1),
                           Rat(2), Rat(0), Rat(0)),
                  TowerCapError);
}
