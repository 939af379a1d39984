#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "folmod/blowup.hpp"
#include "folmod/parse.hpp"

using namespace folmod;

namespace {

BiPoly P(std::initializer_list<std::tuple<int, int, long>> ts) {
  BiPoly p;
  for (auto& [i, j, c] : ts)
    if (c) p.terms[{i, j}] = TowerElem(Rat(c));
  return p;
}

}  // namespace

TEST_CASE("polynomial transforms") {
  Tower t;
  BiPoly cusp = P({{0, 2, 1}, {3, 0, -1}});

  auto r1 = transform_poly(t, cusp, ChartId::first);
  CHECK(r1.exceptional_order == 2);
  CHECK(r1.strict_poly == P({{0, 2, 1}, {1, 0, -1}}));  // y'^2 - x'

  auto r2 = transform_poly(t, P({{1, 0, 1}}), ChartId::first);
  CHECK(r2.exceptional_order == 1);
  CHECK(r2.strict_poly == P({{0, 0, 1}}));  // x is the exceptional line here

  auto r3 = transform_poly(t, P({{1, 1, 1}}), ChartId::first);
  CHECK(r3.exceptional_order == 2);
  CHECK(r3.strict_poly == P({{0, 1, 1}}));

  auto r4 = transform_poly(t, cusp, ChartId::second);
  CHECK(r4.exceptional_order == 2);
  CHECK(r4.strict_poly == P({{0, 0, 1}, {3, 1, -1}}));  // 1 - x^3 y
}

TEST_CASE("form transform, non-dicritical") {
  Tower t;
  // 2y dx + 3x dy
  OneForm mf{P({{0, 1, 2}}), P({{1, 0, 3}}), true};
  auto f2 = transform_form(t, mf, ChartId::first);
  CHECK(f2.exceptional_order == 1);
  CHECK(!f2.dicritical);
  CHECK(f2.strict_form.a == P({{0, 1, 5}}));
  CHECK(f2.strict_form.b == P({{1, 0, 3}}));

  OneForm cf{P({{2, 0, -3}}), P({{0, 1, 2}}), true};  // d(y^2-x^3)
  auto f3 = transform_form(t, cf, ChartId::first);
  CHECK(f3.exceptional_order == 1);
  CHECK(!f3.dicritical);
  CHECK(f3.strict_form.a == P({{1, 0, -3}, {0, 2, 2}}));
  CHECK(f3.strict_form.b == P({{1, 1, 2}}));
}

TEST_CASE("form transform, dicritical") {
  Tower t;
  OneForm rad{P({{0, 1, 1}}), P({{1, 0, -1}}), true};  // y dx - x dy
  auto f1 = transform_form(t, rad, ChartId::first);
  CHECK(f1.exceptional_order == 2);  // nu0 + 1: E is not invariant
  CHECK(f1.dicritical);
  auto f2 = transform_form(t, rad, ChartId::second);
  CHECK(f2.dicritical);
}

TEST_CASE("dicritical threshold") {
  Tower t;
  // d(xy): k = nu0(omega) = 1, invariant E
  OneForm w{P({{0, 1, 1}}), P({{1, 0, 1}}), true};
  auto f = transform_form(t, w, ChartId::first);
  CHECK(f.exceptional_order == 1);
  CHECK(!f.dicritical);
}
