#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "folmod/qpoly.hpp"
#include "folmod/rational.hpp"

namespace folmod {

class Tower;

// Element of an algebraic tower, independent of any particular Tower object
// but only meaningful relative to one (the tower supplies the relations).
//
// Normal form: lvl == 0 holds a plain rational in q. lvl > 0 holds the
// coordinates c (index k = coefficient of gen_lvl^k) with c.size() >= 2,
// c.back() nonzero, and every entry of lvl strictly smaller.
struct TowerElem {
  int lvl = 0;
  Rat q;
  std::vector<TowerElem> c;

  TowerElem() = default;
  explicit TowerElem(Rat v) : q(std::move(v)) {}
  explicit TowerElem(int v) : q(v) {}

  bool operator==(const TowerElem& o) const {
    return lvl == o.lvl && q == o.q && c == o.c;
  }
  bool operator!=(const TowerElem& o) const { return !(*this == o); }
  bool is_zero() const { return lvl == 0 && q == 0; }
};

struct TowerLevel {
  // Monic minimal polynomial of the generator over the tower below;
  // coefficient of gen^k at index k, entries of lvl < this level's index.
  std::vector<TowerElem> minpoly;
  // Isolating rectangle [re_lo, re_hi] x [im_lo, im_hi]; shrunk on demand.
  mutable Rat re_lo, re_hi, im_lo, im_hi;
  // True iff the isolated root is certified real (sign change of the
  // minimal polynomial at the real endpoints); refinement then bisects
  // [re_lo, re_hi] keeping the sign change.
  bool real_certified = false;
};

class TowerCapError : public std::runtime_error {
 public:
  explicit TowerCapError(const std::string& m) : std::runtime_error(m) {}
};
class NotRealError : public std::runtime_error {
 public:
  explicit NotRealError(const std::string& m) : std::runtime_error(m) {}
};

class Tower {
 public:
  std::vector<TowerLevel> levels;
  int degree_cap = 64;

  int height() const { return static_cast<int>(levels.size()); }
  int level_degree(int lvl) const;  // degree of minpoly at 1-based level
  int total_degree() const;

  // Appends a level; throws TowerCapError if the total degree would exceed
  // the cap. No irreducibility check here (see adjoin_root).
  void extend(std::vector<TowerElem> minpoly, Rat re_lo, Rat re_hi, Rat im_lo,
              Rat im_hi);
};

// -- construction ------------------------------------------------------------
TowerElem te_rat(Rat v);
TowerElem te_int(long v);
// the generator of the given 1-based level
TowerElem te_gen(int lvl);
// builds an element of level lvl from raw coordinates (normalizes)
TowerElem te_make(int lvl, std::vector<TowerElem> coords);

// -- arithmetic --------------------------------------------------------------
TowerElem te_add(const TowerElem& a, const TowerElem& b);
TowerElem te_sub(const TowerElem& a, const TowerElem& b);
TowerElem te_neg(const TowerElem& a);
TowerElem te_mul(const Tower& t, const TowerElem& a, const TowerElem& b);
// multiplication by a rational scalar (no tower needed)
TowerElem te_scale_rat(const TowerElem& a, const Rat& r);
TowerElem te_inv(const Tower& t, const TowerElem& a);  // throws on zero
TowerElem te_div(const Tower& t, const TowerElem& a, const TowerElem& b);
TowerElem te_pow(const Tower& t, TowerElem a, unsigned e);

std::optional<Rat> te_is_rational(const TowerElem& a);

// Exact sign of a real element: -1, 0, +1. Throws NotRealError if the
// element's support involves a generator that is not certified real.
int te_sign(const Tower& t, const TowerElem& a);

// Coordinates of a in the Q-power-basis of the whole tower, length
// t.total_degree(), tensor order: fastest index = lowest level.
std::vector<Rat> te_qcoords(const Tower& t, const TowerElem& a);

// Rational interval [lo, hi] enclosing a real element, of width <= eps.
std::pair<Rat, Rat> te_enclosure(const Tower& t, const TowerElem& a,
                                 const Rat& eps);

// -- serialization -----------------------------------------------------------
std::string te_to_json(const Tower& t, const TowerElem& a);
// Parses the output of te_to_json; reconstructs both tower and element.
std::pair<Tower, TowerElem> te_from_json(const std::string& s);

}  // namespace folmod
