#pragma once

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "folmod/upoly.hpp"

namespace folmod {

class ReduciblePolynomialError : public std::runtime_error {
 public:
  explicit ReduciblePolynomialError(const std::string& m)
      : std::runtime_error(m) {}
};
class AmbiguousRegionError : public std::runtime_error {
 public:
  explicit AmbiguousRegionError(const std::string& m)
      : std::runtime_error(m) {}
};

// Factors p over the tower into monic irreducible factors with
// multiplicities; lc(p) times the product reproduces p.
std::vector<std::pair<UPoly, int>> up_factor(const Tower& t, const UPoly& p);

bool up_irreducible(const Tower& t, const UPoly& p);

struct AdjoinResult {
  Tower tower;
  TowerElem root;
};

// Adjoins the root of p isolated by the given rectangle. p must be
// irreducible over t (checked; ReduciblePolynomialError otherwise). A purely
// real degenerate-imaginary region is verified to hold exactly one real root
// when the coefficients are rational (AmbiguousRegionError otherwise). For
// deg p = 1 the tower is unchanged and the rational-linear root is returned.
AdjoinResult adjoin_root(Tower t, UPoly p, Rat re_lo, Rat re_hi, Rat im_lo,
                         Rat im_hi);

// Adjoins some root of an irreducible p, choosing an isolating region
// itself: a Sturm/sign-certified real interval when one exists, otherwise a
// numeric box around a complex root.
AdjoinResult adjoin_any_root(Tower t, UPoly p);

// Floating approximation (display / region seeding only; never feeds back
// into stored values).
std::complex<double> te_approx(const Tower& t, const TowerElem& a);

enum class RatioKind {
  pos_rational,
  nonpos_rational,
  irrational,
  one_zero,
  both_zero
};
struct EigenRatio {
  RatioKind kind;
  Rat r;  // set for the two rational kinds; the representative with |r| <= 1
};

// Classifies the ratio of the two eigenvalues of a 2x2 linear part from its
// trace and determinant, without constructing the eigenvalues: a rational
// ratio r satisfies det*(1+r)^2 - trace^2*r = 0.
EigenRatio eigen_ratio_class(const Tower& t, const TowerElem& trace,
                             const TowerElem& det);

}  // namespace folmod
