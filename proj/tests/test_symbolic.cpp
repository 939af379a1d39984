#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

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

TEST_CASE("orders") {
  BiPoly cusp = P({{0, 2, 1}, {3, 0, -1}});
  CHECK(bp_order(cusp) == 2);
  OneForm rad{P({{0, 1, 1}}), P({{1, 0, -1}}), true};
  CHECK(form_order(rad) == 1);
  CHECK(form_order(form_d(cusp)) == 1);
}

TEST_CASE("strip_common_factor") {
  Tower t;
  BiPoly x = bp_x(), y = bp_y();
  OneForm w{bp_mul(t, x, y), bp_mul(t, x, x), false};
  auto [red, fac] = strip_common_factor(t, w);
  CHECK(fac == x);
  CHECK(red.a == y);
  CHECK(red.b == x);
  CHECK(red.reduced);

  // already reduced input
  OneForm w2{y, x, false};
  auto [r2, f2] = strip_common_factor(t, w2);
  CHECK(f2 == P({{0, 0, 1}}));
  CHECK(r2.a == y);

  BiPoly ymx2 = P({{0, 1, 1}, {2, 0, -1}});
  OneForm w3{bp_mul(t, x, ymx2), bp_mul(t, x, x), false};
  auto [r3, f3] = strip_common_factor(t, w3);
  CHECK(f3 == x);
  CHECK(r3.a == ymx2);
  // reduced * gcd reproduces the input
  CHECK(bp_mul(t, r3.a, f3) == w3.a);
  CHECK(bp_mul(t, r3.b, f3) == w3.b);
}

TEST_CASE("intersection multiplicity") {
  Tower t;
  BiPoly x = bp_x(), y = bp_y();
  BiPoly cusp = P({{0, 2, 1}, {3, 0, -1}});
  BiPoly ymx2 = P({{0, 1, 1}, {2, 0, -1}});
  CHECK(*bp_intersection_multiplicity(t, x, y) == 1);
  CHECK(*bp_intersection_multiplicity(t, cusp, y) == 3);
  CHECK(*bp_intersection_multiplicity(t, cusp, x) == 2);
  CHECK(*bp_intersection_multiplicity(t, cusp, ymx2) == 3);
  CHECK(*bp_intersection_multiplicity(t, bp_mul(t, x, y), bp_add(x, y)) == 2);
  CHECK(!bp_intersection_multiplicity(t, cusp, cusp));  // infinite
  // symmetry on a few pairs
  BiPoly pairs[] = {x, y, cusp, ymx2, bp_add(x, y)};
  for (auto& f : pairs)
    for (auto& g : pairs) {
      auto ij = bp_intersection_multiplicity(t, f, g);
      auto ji = bp_intersection_multiplicity(t, g, f);
      CHECK(ij.has_value() == ji.has_value());
      if (ij) CHECK(*ij == *ji);
    }
}

TEST_CASE("shift") {
  Tower t;
  CHECK(bp_shift(t, P({{2, 0, 1}, {0, 1, 1}}), TowerElem(1), TowerElem()) ==
        P({{2, 0, 1}, {1, 0, 2}, {0, 0, 1}, {0, 1, 1}}));
  CHECK(bp_shift(t, P({{0, 1, 1}, {2, 0, -1}}), TowerElem(1), TowerElem(1)) ==
        P({{0, 1, 1}, {2, 0, -1}, {1, 0, -2}}));
  BiPoly q = P({{3, 2, 5}, {1, 1, -7}});
  CHECK(bp_shift(t, q, TowerElem(), TowerElem()) == q);
}

TEST_CASE("order additivity and divexact") {
  Tower t;
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> d(-3, 3), e(0, 3);
  for (int k = 0; k < 30; ++k) {
    BiPoly p, q;
    while (p.is_zero())
      for (int n = 0; n < 3; ++n)
        p = bp_add(p, bp_term(e(rng), e(rng), TowerElem(d(rng))));
    while (q.is_zero())
      for (int n = 0; n < 3; ++n)
        q = bp_add(q, bp_term(e(rng), e(rng), TowerElem(d(rng))));
    BiPoly prod = bp_mul(t, p, q);
    CHECK(bp_order(prod) == bp_order(p) + bp_order(q));
    CHECK(bp_divexact(t, prod, q) == p);
  }
}

TEST_CASE("gcd over an extension") {
  Tower t;
  t.extend({TowerElem(-2), TowerElem(0), TowerElem(1)}, Rat(1), Rat(2), Rat(0),
           Rat(0));
  TowerElem r2 = te_gen(1);
  BiPoly x = bp_x(), y = bp_y();
  BiPoly lin = bp_sub(y, bp_scale(t, x, r2));
  BiPoly g =
      bp_gcd(t, bp_mul(t, lin, bp_add(y, x)), bp_mul(t, lin, bp_sub(y, x)));
  CHECK(bp_divexact(t, g, g) == P({{0, 0, 1}}));
  CHECK(bp_order(g) == 1);
  // gcd divides both
  CHECK(bp_mul(t, bp_divexact(t, bp_mul(t, lin, bp_add(y, x)), g), g) ==
        bp_mul(t, lin, bp_add(y, x)));
}

TEST_CASE("parser on spec-style inputs") {
  auto r1 = parse_expression("y*dx - x*dy");
  CHECK(r1.kind == ParseResult::kForm);
  CHECK(r1.form.a == P({{0, 1, 1}}));
  CHECK(r1.form.b == P({{1, 0, -1}}));

  auto r2 = parse_expression("d(y^2 - x^3)");
  CHECK(r2.form.a == P({{2, 0, -3}}));
  CHECK(r2.form.b == P({{0, 1, 2}}));

  auto r3 = parse_expression("2*dx/x + 3*dy/y");
  CHECK(r3.kind == ParseResult::kLogPresentation);
  REQUIRE(r3.logp.pairs.size() == 2);
  CHECK(r3.logp.pairs[0].first == TowerElem(2));
  CHECK(r3.logp.pairs[0].second == P({{1, 0, 1}}));
  CHECK(!r3.logp.remainder);

  auto r4 = parse_expression("(1/2)*d(x*y)/(x*y) + y*dx");
  CHECK(r4.kind == ParseResult::kLogPresentation);
  CHECK(r4.logp.pairs.size() == 1);
  CHECK(r4.logp.remainder.has_value());

  auto r5 = parse_expression("x^2*y^3 + i*x - 1/3");
  CHECK(r5.kind == ParseResult::kPoly);
  CHECK(r5.tower.height() == 1);  // i adjoined on first use
  CHECK(parse_expression("i*i + 1").poly.is_zero());
}

TEST_CASE("print round trip") {
  auto r2 = parse_expression("d(y^2 - x^3)");
  auto back = parse_expression(print_form(r2.tower, r2.form));
  CHECK(back.form.a == r2.form.a);
  CHECK(back.form.b == r2.form.b);

  auto r3 = parse_expression("2*dx/x + 3*dy/y");
  auto b3 = parse_expression(print_log(r3.tower, r3.logp), r3.tower);
  REQUIRE(b3.logp.pairs.size() == r3.logp.pairs.size());
  for (size_t k = 0; k < r3.logp.pairs.size(); ++k) {
    CHECK(b3.logp.pairs[k].first == r3.logp.pairs[k].first);
    CHECK(b3.logp.pairs[k].second == r3.logp.pairs[k].second);
  }
}

TEST_CASE("file parsing") {
  InputFile f1 = parse_file("# cusp\nfoliation:\nd(y^2-x^3)  # comment\n");
  CHECK(f1.kind == InputFile::kFoliation);
  CHECK(f1.form.has_value());

  InputFile f2 = parse_file("list:\nx, y, x+y\ny^2-x^3\n");
  CHECK(f2.kind == InputFile::kList);
  CHECK(f2.polys.size() == 4);

  InputFile f3 = parse_file("divisor:\nA : 1\nB : -1\nequation : y\n");
  CHECK(f3.entries.size() == 2);
  CHECK(f3.entries[1].coeff == TowerElem(-1));
  REQUIRE(f3.entries[1].equation.has_value());
  CHECK(*f3.entries[1].equation == P({{0, 1, 1}}));
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse_expression("x + * y");
    CHECK(false);
  } catch (const SyntaxError& e) {
    CHECK(e.line == 1);
    CHECK(e.col >= 1);
  }
  CHECK_THROWS_AS(parse_file("foliation:\nx*dx + ]\n"), SyntaxError);
  CHECK_THROWS_AS(parse_file("header:\nx\n"), SyntaxError);
}

TEST_CASE("log presentation expands reduced") {
  Tower t;
  LogPresentation lp{{{TowerElem(2), bp_x()}, {TowerElem(3), bp_y()}},
                     std::nullopt};
  OneForm w = log_to_form(t, lp);
  CHECK(w.a == P({{0, 1, 2}}));
  CHECK(w.b == P({{1, 0, 3}}));
  CHECK(w.reduced);
}
