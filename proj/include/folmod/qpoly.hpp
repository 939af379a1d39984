#pragma once

#include <utility>
#include <vector>

#include "folmod/rational.hpp"

namespace folmod {

// Dense univariate polynomial over Q, coefficient of x^i at index i.
// Normal form: empty vector is the zero polynomial, back() != 0 otherwise.
using QPoly = std::vector<Rat>;

QPoly qp_trim(QPoly p);
inline int qp_deg(const QPoly& p) { return static_cast<int>(p.size()) - 1; }
inline bool qp_is_zero(const QPoly& p) { return p.empty(); }

QPoly qp_add(const QPoly& a, const QPoly& b);
QPoly qp_sub(const QPoly& a, const QPoly& b);
QPoly qp_mul(const QPoly& a, const QPoly& b);
QPoly qp_scale(const QPoly& a, const Rat& c);
// Euclidean division; returns {quotient, remainder}.
std::pair<QPoly, QPoly> qp_divmod(const QPoly& a, const QPoly& b);
QPoly qp_derivative(const QPoly& a);
QPoly qp_monic(const QPoly& a);
QPoly qp_gcd(QPoly a, QPoly b);  // monic gcd
Rat qp_eval(const QPoly& a, const Rat& x);
// p(x + c)
QPoly qp_shift(const QPoly& a, const Rat& c);

// Squarefree decomposition by Yun's algorithm: list of (factor, multiplicity)
// with factors monic, pairwise coprime, and product of factor^mult = monic(p).
std::vector<std::pair<QPoly, int>> qp_squarefree(const QPoly& p);

// Isolating intervals [lo, hi] for the real roots of a squarefree p, via
// Sturm sequences. Each interval contains exactly one root; endpoints are
// not roots unless lo == hi (exact rational root).
std::vector<std::pair<Rat, Rat>> qp_isolate_real_roots(const QPoly& p);

// All rational roots of p (exact).
std::vector<Rat> qp_rational_roots(const QPoly& p);

}  // namespace folmod
