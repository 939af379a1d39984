#pragma once

#include <map>
#include <optional>
#include <utility>

#include "folmod/towerfactor.hpp"
#include "folmod/upoly.hpp"

namespace folmod {

// Bivariate polynomial over TowerElem coefficients. Sparse storage, keys
// ordered graded-lexicographically (total degree, then x-degree).
struct GradedLess {
  bool operator()(const std::pair<int, int>& a,
                  const std::pair<int, int>& b) const {
    int da = a.first + a.second, db = b.first + b.second;
    if (da != db) return da < db;
    return a.first < b.first;
  }
};

struct BiPoly {
  std::map<std::pair<int, int>, TowerElem, GradedLess> terms;

  bool is_zero() const { return terms.empty(); }
  bool operator==(const BiPoly& o) const { return terms == o.terms; }
};

BiPoly bp_zero();
BiPoly bp_const(TowerElem c);
BiPoly bp_term(int i, int j, TowerElem c);
inline BiPoly bp_x() { return bp_term(1, 0, TowerElem(1)); }
inline BiPoly bp_y() { return bp_term(0, 1, TowerElem(1)); }

BiPoly bp_add(const BiPoly& a, const BiPoly& b);
BiPoly bp_sub(const BiPoly& a, const BiPoly& b);
BiPoly bp_neg(const BiPoly& a);
BiPoly bp_mul(const Tower& t, const BiPoly& a, const BiPoly& b);
BiPoly bp_scale(const Tower& t, const BiPoly& a, const TowerElem& c);
BiPoly bp_scale_rat(const BiPoly& a, const Rat& r);
BiPoly bp_pow(const Tower& t, const BiPoly& a, unsigned e);

int bp_deg_x(const BiPoly& a);
int bp_deg_y(const BiPoly& a);
// least total degree of a term; throws std::domain_error on zero input
int bp_order(const BiPoly& a);

BiPoly bp_dx(const BiPoly& a);
BiPoly bp_dy(const BiPoly& a);

TowerElem bp_eval(const Tower& t, const BiPoly& a, const TowerElem& x,
                  const TowerElem& y);
// substitute x -> X(x,y), y -> Y(x,y)
BiPoly bp_compose(const Tower& t, const BiPoly& a, const BiPoly& X,
                  const BiPoly& Y);
// p(x + cx, y + cy)
BiPoly bp_shift(const Tower& t, const BiPoly& a, const TowerElem& cx,
                const TowerElem& cy);

// restriction to an axis
UPoly bp_at_x0(const BiPoly& a);  // p(0, y), poly in y
UPoly bp_at_y0(const BiPoly& a);  // p(x, 0), poly in x

BiPoly bp_mul_monomial(const BiPoly& a, int i, int j);
// exact division by x^i y^j; asserts divisibility
BiPoly bp_div_monomial(const BiPoly& a, int i, int j);
// largest (i, j) with x^i y^j dividing a
std::pair<int, int> bp_monomial_content(const BiPoly& a);

// gcd over the tower field (content/primitive-part in y, primitive
// pseudo-remainder sequence); normalized so the leading y-coefficient is a
// monic polynomial in x.
BiPoly bp_gcd(const Tower& t, const BiPoly& a, const BiPoly& b);
// exact division; asserts b | a
BiPoly bp_divexact(const Tower& t, const BiPoly& a, const BiPoly& b);

// Intersection multiplicity at the origin of curves f = 0, g = 0, via the
// x-order of Res_y after a certified shear x -> x + k*y; nullopt = infinite
// (common component through the origin).
std::optional<int> bp_intersection_multiplicity(const Tower& t,
                                                const BiPoly& f,
                                                const BiPoly& g);

// display form, deterministic (graded-lex); tower generators print as g1,
// g2, ... except a generator of x^2+1 which prints as i
std::string bp_print(const Tower& t, const BiPoly& a);
std::string te_print(const Tower& t, const TowerElem& a);

// 1-form a dx + b dy
struct OneForm {
  BiPoly a, b;
  bool reduced = false;
};

struct LogPresentation {
  std::vector<std::pair<TowerElem, BiPoly>> pairs;
  std::optional<OneForm> remainder;
};

int form_order(const OneForm& w);
// exterior derivative d(p) = p_x dx + p_y dy
OneForm form_d(const BiPoly& p);
// strips gcd(a, b); returns the reduced form and the extracted factor
std::pair<OneForm, BiPoly> strip_common_factor(const Tower& t,
                                               const OneForm& w);
// expands a log presentation to the reduced polynomial 1-form
// (multiply eta = sum lambda_i dfi/fi by prod fi, then strip)
OneForm log_to_form(const Tower& t, const LogPresentation& lp);

}  // namespace folmod
