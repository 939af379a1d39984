#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "folmod/model.hpp"

using namespace folmod;

namespace {

BiPoly P(std::initializer_list<std::tuple<int, int, long>> ts) {
  BiPoly p;
  for (auto& [i, j, c] : ts)
    if (c) p.terms[{i, j}] = TowerElem(Rat(c));
  return p;
}

const Tower t0;

}  // namespace

TEST_CASE("cusp model") {
  BiPoly f = P({{0, 2, 1}, {3, 0, -1}});
  ResolveOptions opt;
  opt.equations = {{"C", f}};
  ResolutionTree tr = resolve(t0, form_d(f), opt);
  REQUIRE(tr.accepted);
  CHECK(cs_index_branch(tr, "B1") == te_rat(Rat(0)));
  IndexMatrix A = build_index_matrix(tr, &opt.equations);
  REQUIRE(A.entries.size() == 1);
  CHECK(A.entries[0][0].is_zero());
  DivisorialModel mk = divisorial_model_kernel(tr, A);
  DivisorialModel mp = divisorial_model_propagation(tr);
  CHECK(mk.divisor.entries == mp.divisor.entries);
  CHECK(mk.divisor.entries.at("B1") == te_rat(Rat(1)));
  // pull-back ledger 2,3,6 in blow-up order
  REQUIRE(mp.exceptional.size() == 3);
  CHECK(mp.exceptional[0].second == te_rat(Rat(2)));
  CHECK(mp.exceptional[1].second == te_rat(Rat(3)));
  CHECK(mp.exceptional[2].second == te_rat(Rat(6)));
  for (size_t i = 0; i < 3; ++i)
    CHECK(mk.exceptional[i].second == mp.exceptional[i].second);
  CHECK(verify_model(tr, mk.divisor).pass());
  // the creation-time index sum law on every component
  for (auto& e : tr.exc_ids)
    CHECK(cs_exceptional_sum(tr, e) == te_rat(Rat(-1)));
}

TEST_CASE("d(xy) model and logarithmic round trip") {
  ResolveOptions opt;
  opt.equations = {{"X", P({{1, 0, 1}})}, {"Y", P({{0, 1, 1}})}};
  ResolutionTree tr = resolve(t0, form_d(P({{1, 1, 1}})), opt);
  IndexMatrix A = build_index_matrix(tr, &opt.equations);
  CHECK(A.entries[0][0] == te_rat(Rat(-1)));
  CHECK(A.entries[0][1] == te_rat(Rat(1)));
  CHECK(cs_index_simple(tr, 0, "B1") == te_rat(Rat(-1)));
  DivisorialModel mk = divisorial_model_kernel(tr, A);
  CHECK(mk.divisor.entries == divisorial_model_propagation(tr).divisor.entries);
  CHECK(mk.divisor.entries.at("B2") == te_rat(Rat(1)));
  LogPresentation lp = logarithmic_model_form(tr, mk, opt.equations);
  REQUIRE(lp.pairs.size() == 2);
  OneForm back = log_to_form(tr.tower, lp);
  CHECK(back.a == P({{0, 1, 1}}));
  CHECK(back.b == P({{1, 0, 1}}));
}

TEST_CASE("x^2 y^3 model") {
  OneForm w{P({{0, 1, 2}}), P({{1, 0, 3}}), false};
  ResolutionTree tr = resolve(t0, w, {});
  IndexMatrix A = build_index_matrix(tr);
  CHECK(A.entries[0][0] == te_rat(Rat(-3, 2)));
  CHECK(A.entries[1][1] == te_rat(Rat(-2, 3)));
  DivisorialModel mk = divisorial_model_kernel(tr, A);
  CHECK(mk.divisor.entries == divisorial_model_propagation(tr).divisor.entries);
  CHECK(mk.divisor.entries.at("B2") == te_rat(Rat(3, 2)));
  CHECK(verify_model(tr, mk.divisor).pass());
}

TEST_CASE("three lines: model, verification and round trip") {
  BiPoly f = P({{2, 1, 1}, {1, 2, 1}});
  ResolveOptions opt;
  opt.equations = {{"L1", P({{1, 0, 1}})},
                   {"L2", P({{0, 1, 1}})},
                   {"L3", P({{1, 0, 1}, {0, 1, 1}})}};
  ResolutionTree tr = resolve(t0, form_d(f), opt);
  IndexMatrix A = build_index_matrix(tr, &opt.equations);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(A.entries[i][j] == te_rat(Rat(i == j ? -2 : 1)));
  DivisorialModel mk = divisorial_model_kernel(tr, A);
  CHECK(mk.divisor.entries == divisorial_model_propagation(tr).divisor.entries);
  for (auto& [id, v] : mk.divisor.entries) CHECK(v == te_rat(Rat(1)));
  CHECK(verify_model(tr, mk.divisor).pass());

  // scaling preserves the model, perturbation breaks it
  CDivisor scaled = mk.divisor;
  for (auto& [id, v] : scaled.entries) v = te_scale_rat(v, Rat(7));
  CHECK(verify_model(tr, scaled).pass());
  CDivisor bad = mk.divisor;
  bad.set("B1", te_rat(Rat(2)));
  VerifyReport rb = verify_model(tr, bad);
  CHECK(!rb.indices_ok);
  CHECK(!rb.violated.empty());

  LogPresentation lp = logarithmic_model_form(tr, mk, opt.equations);
  OneForm eta = log_to_form(tr.tower, lp);
  ResolutionTree tr2 = resolve(t0, eta, opt);
  REQUIRE(tr2.accepted);
  DivisorialModel m2 = divisorial_model_kernel(tr2, build_index_matrix(tr2));
  CHECK(projective_equiv(tr2.tower, m2.divisor, mk.divisor));
}

TEST_CASE("Martinet-Ramis (1,2) model") {
  OneForm w{P({{0, 1, 1}}), P({{1, 0, 2}, {2, 2, 1}}), false};
  ResolutionTree tr = resolve(t0, w, {});
  REQUIRE(tr.accepted);
  REQUIRE(tr.branches.size() == 2);
  IndexMatrix A = build_index_matrix(tr);
  CHECK(A.entries[0][0] == te_rat(Rat(-2)));
  CHECK(A.entries[1][1] == te_rat(Rat(-1, 2)));
  DivisorialModel mk = divisorial_model_kernel(tr, A);
  CHECK(mk.divisor.entries.at("B1") == te_rat(Rat(1)));
  CHECK(mk.divisor.entries.at("B2") == te_rat(Rat(2)));
  CHECK(mk.divisor.entries == divisorial_model_propagation(tr).divisor.entries);
}

TEST_CASE("tangent smooth pair and a dicritical divisor") {
  BiPoly f1 = P({{0, 1, 1}, {2, 0, -1}});
  BiPoly f2 = P({{0, 1, 1}, {2, 0, 1}});
  ResolveOptions opt;
  opt.equations = {{"F1", f1}, {"F2", f2}};
  ResolutionTree tr = resolve(t0, form_d(bp_mul(t0, f1, f2)), opt);
  REQUIRE(tr.accepted);
  CHECK(tr.exc_ids.size() == 2);
  IndexMatrix A = build_index_matrix(tr, &opt.equations);
  CHECK(A.entries[0][0] == te_rat(Rat(-2)));
  CHECK(A.entries[0][1] == te_rat(Rat(2)));
  DivisorialModel mk = divisorial_model_kernel(tr, A);
  CHECK(mk.divisor.entries == divisorial_model_propagation(tr).divisor.entries);
  for (auto& [id, v] : mk.divisor.entries) CHECK(v == te_rat(Rat(1)));
  CHECK(verify_model(tr, mk.divisor).pass());

  // the sign-flipped divisor kills an exceptional pull-back coefficient
  CDivisor d;
  d.set("B1", te_rat(Rat(1)));
  d.set("B2", te_rat(Rat(-1)));
  VerifyReport rep = verify_model(tr, d);
  CHECK(rep.support_ok);
  CHECK(!rep.indices_ok);
  CHECK(rep.divisor_dicritical);
}

TEST_CASE("matrix helpers") {
  Tower t;
  std::vector<std::vector<TowerElem>> m = {
      {TowerElem(2), TowerElem(1)}, {TowerElem(1), TowerElem(2)}};
  CHECK(matrix_det(t, m) == TowerElem(3));
  CHECK(matrix_det(t, {}) == TowerElem(1));
  std::vector<std::vector<TowerElem>> sing = {
      {TowerElem(1), TowerElem(2)}, {TowerElem(2), TowerElem(4)}};
  CHECK(matrix_det(t, sing).is_zero());
}
