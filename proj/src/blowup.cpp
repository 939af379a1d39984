#include "folmod/blowup.hpp"

#include <cassert>

namespace folmod {

namespace {

// exponent of the exceptional coordinate in a term
int exc_exp(const std::pair<int, int>& e, ChartId chart) {
  return chart == ChartId::first ? e.first : e.second;
}

int exc_order(const BiPoly& p, ChartId chart) {
  int m = 1 << 29;
  for (const auto& [e, c] : p.terms) m = std::min(m, exc_exp(e, chart));
  return m;
}

BiPoly div_exc(const BiPoly& p, ChartId chart, int k) {
  return chart == ChartId::first ? bp_div_monomial(p, k, 0)
                                 : bp_div_monomial(p, 0, k);
}

}  // namespace

BiPoly chart_subst_poly(const Tower& t, const BiPoly& p, ChartId chart) {
  BiPoly xy = bp_mul(t, bp_x(), bp_y());
  if (chart == ChartId::first) return bp_compose(t, p, bp_x(), xy);
  return bp_compose(t, p, xy, bp_y());
}

TransformResult transform_poly(const Tower& t, const BiPoly& p, ChartId chart) {
  assert(!p.is_zero());
  TransformResult r;
  BiPoly total = chart_subst_poly(t, p, chart);
  int nu = bp_order(p);
  r.exceptional_order = nu;
  r.strict_poly = div_exc(total, chart, nu);
  assert(exc_order(total, chart) >= nu);
  r.dicritical = false;
  return r;
}

TransformResult transform_form(const Tower& t, const OneForm& w, ChartId chart) {
  BiPoly as, bs;
  if (chart == ChartId::first) {
    // x = x', y = x'y': dy = y'dx' + x'dy'
    BiPoly a = chart_subst_poly(t, w.a, chart);
    BiPoly b = chart_subst_poly(t, w.b, chart);
    as = bp_add(a, bp_mul(t, bp_y(), b));
    bs = bp_mul(t, bp_x(), b);
  } else {
    // x = x'y', y = y': dx = y'dx' + x'dy'
    BiPoly a = chart_subst_poly(t, w.a, chart);
    BiPoly b = chart_subst_poly(t, w.b, chart);
    as = bp_mul(t, bp_y(), a);
    bs = bp_add(bp_mul(t, bp_x(), a), b);
  }
  TransformResult r;
  if (as.is_zero() && bs.is_zero()) {
    r.consistent = false;
    return r;
  }
  int k = 1 << 29;
  if (!as.is_zero()) k = std::min(k, exc_order(as, chart));
  if (!bs.is_zero()) k = std::min(k, exc_order(bs, chart));
  as = as.is_zero() ? as : div_exc(as, chart, k);
  bs = bs.is_zero() ? bs : div_exc(bs, chart, k);
  r.exceptional_order = k;
  r.dicritical = k >= form_order(w) + 1;
  auto [red, fac] = strip_common_factor(t, {as, bs, false});
  // maximality of k means any residual common factor signals unreduced input
  if (bp_deg_x(fac) + bp_deg_y(fac) > 0) r.consistent = false;
  r.strict_form = red;
  return r;
}

}  // namespace folmod
