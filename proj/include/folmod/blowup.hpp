#pragma once

#include "folmod/bipoly.hpp"

namespace folmod {

// Affine charts of the blow-up of the origin:
//   first:  (x, y) = (x', x'y'), exceptional divisor x' = 0
//   second: (x, y) = (x'y', y'), exceptional divisor y' = 0
// The charts glue by y' -> 1/y' off the axes; the second chart is only used
// for the single point y' = infinity of the first.
enum class ChartId { first, second };

struct TransformResult {
  BiPoly strict_poly;
  OneForm strict_form;
  int exceptional_order = 0;
  bool dicritical = false;
  // false when stripping the strict form removed a factor that is not a
  // unit (input was not reduced)
  bool consistent = true;
};

// total transform p(chart substitution), undivided
BiPoly chart_subst_poly(const Tower& t, const BiPoly& p, ChartId chart);

// strict transform and multiplicity of a polynomial
TransformResult transform_poly(const Tower& t, const BiPoly& p, ChartId chart);

// pull-back of a reduced 1-form divided by the maximal exceptional power k;
// dicritical iff k >= nu_0(w) + 1
TransformResult transform_form(const Tower& t, const OneForm& w, ChartId chart);

}  // namespace folmod
