#pragma once

#include <utility>
#include <vector>

#include "folmod/tower.hpp"

namespace folmod {

// Dense univariate polynomial with TowerElem coefficients; coefficient of
// x^i at index i; empty = zero, back() nonzero otherwise.
using UPoly = std::vector<TowerElem>;

UPoly up_trim(UPoly p);
inline int up_deg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly up_from_qpoly(const QPoly& p);
// Requires all coefficients rational.
QPoly up_to_qpoly(const UPoly& p);

UPoly up_add(const UPoly& a, const UPoly& b);
UPoly up_sub(const UPoly& a, const UPoly& b);
UPoly up_mul(const Tower& t, const UPoly& a, const UPoly& b);
UPoly up_scale(const Tower& t, const UPoly& a, const TowerElem& c);
std::pair<UPoly, UPoly> up_divmod(const Tower& t, const UPoly& a,
                                  const UPoly& b);
UPoly up_derivative(const UPoly& a);
UPoly up_monic(const Tower& t, const UPoly& a);
UPoly up_gcd(const Tower& t, UPoly a, UPoly b);  // monic gcd
TowerElem up_eval(const Tower& t, const UPoly& a, const TowerElem& x);
// p(x + c)
UPoly up_shift(const Tower& t, const UPoly& a, const TowerElem& c);

// Resultant of a monic a with arbitrary b: the product of b over the roots
// of a (lc(a)^deg b factor trivial).
TowerElem up_resultant_monic(const Tower& t, const UPoly& a, const UPoly& b);

// Unique polynomial of degree < points.size() through (x_i, y_i).
UPoly up_interpolate(const Tower& t, const std::vector<Rat>& xs,
                     const std::vector<TowerElem>& ys);

}  // namespace folmod
