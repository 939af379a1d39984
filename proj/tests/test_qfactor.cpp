#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "folmod/qfactor.hpp"
#include "folmod/towerfactor.hpp"

using namespace folmod;

namespace {

QPoly P(std::initializer_list<int> c) {
  QPoly r;
  for (int x : c) r.push_back(Rat(x));
  return qp_trim(r);
}

UPoly U(std::initializer_list<int> c) {
  UPoly r;
  for (int x : c) r.push_back(TowerElem(x));
  return up_trim(r);
}

}  // namespace

TEST_CASE("rational factorization") {
  CHECK(qp_factor(P({-1, 0, 1})).size() == 2);  // x^2-1
  CHECK(qp_factor(P({-4, 0, 0, 0, 1})).size() == 2);  // (x^2-2)(x^2+2)
  CHECK(qp_irreducible(P({1, 0, 1})));
  CHECK(!qp_irreducible(P({-1, 0, 1})));

  // (x^2+x+1)^2 (x-3)
  QPoly g = qp_mul(qp_mul(P({1, 1, 1}), P({1, 1, 1})), P({-3, 1}));
  auto fs = qp_factor(g);
  CHECK(fs.size() == 2);
  bool sq = false;
  for (auto& [f, m] : fs) sq |= m == 2;
  CHECK(sq);

  // non-monic: 6x^2-5x+1 = 6(x-1/2)(x-1/3)
  CHECK(qp_factor(P({1, -5, 6})).size() == 2);
}

TEST_CASE("factor multiply-back on products") {
  QPoly big = P({1});
  for (int k = 1; k <= 5; ++k) big = qp_mul(big, P({k, 0, 1}));
  for (int k = 1; k <= 4; ++k) big = qp_mul(big, P({-k, 1}));
  auto fs = qp_factor(big);
  CHECK(fs.size() == 9);
  QPoly chk = P({1});
  for (auto& [f, m] : fs)
    for (int i = 0; i < m; ++i) chk = qp_mul(chk, f);
  CHECK(chk == big);
}

TEST_CASE("random multiply-back") {
  std::mt19937 rng(71);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int trial = 0; trial < 20; ++trial) {
    QPoly p = P({1});
    for (int f = 0; f < 3; ++f) {
      QPoly q{Rat(d(rng)), Rat(d(rng)), Rat(d(rng) == 0 ? 1 : d(rng))};
      q = qp_trim(q);
      if (q.size() < 2) q = P({d(rng), 1});
      p = qp_mul(p, q);
    }
    auto fs = qp_factor(p);
    QPoly chk{p.back()};  // leading coefficient
    for (auto& [f, m] : fs)
      for (int i = 0; i < m; ++i) chk = qp_mul(chk, f);
    CHECK(chk == p);
  }
}

TEST_CASE("factorization over an extension") {
  Tower t;
  auto ar = adjoin_any_root(t, U({-2, 0, 1}));
  t = ar.tower;
  TowerElem r2 = ar.root;
  CHECK(*te_is_rational(te_mul(t, r2, r2)) == Rat(2));

  auto fs = up_factor(t, U({-2, 0, 1}));
  CHECK(fs.size() == 2);  // splits over Q(sqrt2)
  bool has = false;
  for (auto& [f, m] : fs) has |= te_neg(f[0]) == r2;
  CHECK(has);

  // x^4-4 = (x-r2)(x+r2)(x^2+2)
  auto fs2 = up_factor(t, U({-4, 0, 0, 0, 1}));
  CHECK(fs2.size() == 3);
  UPoly prod{TowerElem(1)};
  for (auto& [f, m] : fs2)
    for (int i = 0; i < m; ++i) prod = up_mul(t, prod, f);
  CHECK(prod == U({-4, 0, 0, 0, 1}));
}

TEST_CASE("adjoin_root error conditions") {
  Tower t;
  CHECK_THROWS_AS(
      adjoin_root(t, U({-1, 0, 1}), Rat(0), Rat(2), Rat(0), Rat(0)),
      ReduciblePolynomialError);
  CHECK_THROWS_AS(
      adjoin_root(t, U({-3, 0, 1}), Rat(-10), Rat(10), Rat(0), Rat(0)),
      AmbiguousRegionError);
}

TEST_CASE("adjoin a complex root over an extension") {
  Tower t;
  auto ar = adjoin_any_root(t, U({-2, 0, 1}));
  t = ar.tower;
  UPoly pc{ar.root, TowerElem(0), TowerElem(1)};  // x^2 + sqrt2
  auto cr = adjoin_any_root(t, pc);
  CHECK(te_add(te_mul(cr.tower, cr.root, cr.root), ar.root).is_zero());
}

TEST_CASE("eigen ratio classification") {
  Tower t;
  auto e1 = eigen_ratio_class(t, TowerElem(0), TowerElem(-1));
  CHECK(e1.kind == RatioKind::nonpos_rational);
  CHECK(e1.r == Rat(-1));
  auto e2 = eigen_ratio_class(t, TowerElem(2), TowerElem(1));
  CHECK(e2.kind == RatioKind::pos_rational);
  CHECK(e2.r == Rat(1));
  CHECK(eigen_ratio_class(t, TowerElem(1), TowerElem(-1)).kind ==
        RatioKind::irrational);
  CHECK(eigen_ratio_class(t, TowerElem(1), TowerElem(0)).kind ==
        RatioKind::one_zero);
  CHECK(eigen_ratio_class(t, TowerElem(0), TowerElem(0)).kind ==
        RatioKind::both_zero);
  // eigenvalues 3 and -2
  auto e5 = eigen_ratio_class(t, TowerElem(1), TowerElem(-6));
  CHECK(e5.kind == RatioKind::nonpos_rational);
  CHECK((e5.r == Rat(-2, 3) || e5.r == Rat(-3, 2)));
}

TEST_CASE("eigen ratio vs known eigenvalue pairs") {
  Tower t;
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int k = 0; k < 200; ++k) {
    Rat l1(d(rng), 1 + std::abs(d(rng)));
    Rat l2(d(rng), 1 + std::abs(d(rng)));
    Rat tr = l1 + l2, det = l1 * l2;
    auto e = eigen_ratio_class(t, te_rat(tr), te_rat(det));
    if (l1 == 0 && l2 == 0) {
      CHECK(e.kind == RatioKind::both_zero);
    } else if (l1 == 0 || l2 == 0) {
      CHECK(e.kind == RatioKind::one_zero);
    } else {
      Rat r = l1 / l2;
      if (r > 0)
        CHECK(e.kind == RatioKind::pos_rational);
      else
        CHECK(e.kind == RatioKind::nonpos_rational);
      CHECK((e.r == r || e.r == l2 / l1));
    }
  }
  // irrational ratio from an extension element: eigenvalues sqrt2 and 1
  Tower t2;
  auto ar = adjoin_any_root(t2, U({-2, 0, 1}));
  t2 = ar.tower;
  auto e = eigen_ratio_class(t2, te_add(ar.root, TowerElem(1)), ar.root);
  CHECK(e.kind == RatioKind::irrational);
  // eigenvalues sqrt2 and 2 sqrt2: ratio 1/2 despite irrational entries
  auto e2 = eigen_ratio_class(t2, te_scale_rat(ar.root, Rat(3)), TowerElem(4));
  CHECK(e2.kind == RatioKind::pos_rational);
  CHECK((e2.r == Rat(1, 2) || e2.r == Rat(2)));
}
