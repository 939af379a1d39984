#pragma once

#include <utility>
#include <vector>

#include "folmod/qpoly.hpp"

namespace folmod {

// Factors p over Q into monic irreducible factors with multiplicities.
// The product of factor^mult times the leading coefficient reproduces p.
std::vector<std::pair<QPoly, int>> qp_factor(const QPoly& p);

// True iff p (deg >= 1) is irreducible over Q.
bool qp_irreducible(const QPoly& p);

}  // namespace folmod
