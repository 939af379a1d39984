#include "folmod/bipoly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace folmod {

BiPoly bp_zero() { return {}; }

BiPoly bp_const(TowerElem c) {
  BiPoly p;
  if (!c.is_zero()) p.terms[{0, 0}] = std::move(c);
  return p;
}

BiPoly bp_term(int i, int j, TowerElem c) {
  BiPoly p;
  if (!c.is_zero()) p.terms[{i, j}] = std::move(c);
  return p;
}

BiPoly bp_add(const BiPoly& a, const BiPoly& b) {
  BiPoly r = a;
  for (const auto& [e, c] : b.terms) {
    auto it = r.terms.find(e);
    if (it == r.terms.end()) {
      r.terms[e] = c;
    } else {
      it->second = te_add(it->second, c);
      if (it->second.is_zero()) r.terms.erase(it);
    }
  }
  return r;
}

BiPoly bp_neg(const BiPoly& a) {
  BiPoly r = a;
  for (auto& [e, c] : r.terms) c = te_neg(c);
  return r;
}

BiPoly bp_sub(const BiPoly& a, const BiPoly& b) { return bp_add(a, bp_neg(b)); }

BiPoly bp_mul(const Tower& t, const BiPoly& a, const BiPoly& b) {
  BiPoly r;
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      std::pair<int, int> e{ea.first + eb.first, ea.second + eb.second};
      TowerElem prod = te_mul(t, ca, cb);
      auto it = r.terms.find(e);
      if (it == r.terms.end()) {
        if (!prod.is_zero()) r.terms[e] = std::move(prod);
      } else {
        it->second = te_add(it->second, prod);
        if (it->second.is_zero()) r.terms.erase(it);
      }
    }
  return r;
}

BiPoly bp_scale(const Tower& t, const BiPoly& a, const TowerElem& c) {
  if (c.is_zero()) return {};
  BiPoly r = a;
  for (auto& [e, v] : r.terms) v = te_mul(t, v, c);
  return r;
}

BiPoly bp_scale_rat(const BiPoly& a, const Rat& c) {
  if (c == 0) return {};
  BiPoly r = a;
  for (auto& [e, v] : r.terms) v = te_scale_rat(v, c);
  return r;
}

BiPoly bp_pow(const Tower& t, const BiPoly& a, unsigned e) {
  BiPoly r = bp_const(TowerElem(1));
  BiPoly base = a;
  while (e) {
    if (e & 1) r = bp_mul(t, r, base);
    base = bp_mul(t, base, base);
    e >>= 1;
  }
  return r;
}

int bp_deg_x(const BiPoly& a) {
  int d = -1;
  for (const auto& [e, c] : a.terms) d = std::max(d, e.first);
  return d;
}

int bp_deg_y(const BiPoly& a) {
  int d = -1;
  for (const auto& [e, c] : a.terms) d = std::max(d, e.second);
  return d;
}

int bp_order(const BiPoly& a) {
  if (a.is_zero()) throw std::domain_error("zero-input");
  const auto& e = a.terms.begin()->first;  // graded order: first = lowest
  return e.first + e.second;
}

BiPoly bp_dx(const BiPoly& a) {
  BiPoly r;
  for (const auto& [e, c] : a.terms)
    if (e.first > 0)
      r.terms[{e.first - 1, e.second}] = te_scale_rat(c, Rat(e.first));
  return r;
}

BiPoly bp_dy(const BiPoly& a) {
  BiPoly r;
  for (const auto& [e, c] : a.terms)
    if (e.second > 0)
      r.terms[{e.first, e.second - 1}] = te_scale_rat(c, Rat(e.second));
  return r;
}

TowerElem bp_eval(const Tower& t, const BiPoly& a, const TowerElem& x,
                  const TowerElem& y) {
  TowerElem v;
  for (const auto& [e, c] : a.terms) {
    TowerElem term = te_mul(t, c, te_pow(t, x, e.first));
    term = te_mul(t, term, te_pow(t, y, e.second));
    v = te_add(v, term);
  }
  return v;
}

BiPoly bp_compose(const Tower& t, const BiPoly& a, const BiPoly& X,
                  const BiPoly& Y) {
  // cache powers
  std::vector<BiPoly> xp{bp_const(TowerElem(1))}, yp{bp_const(TowerElem(1))};
  int dx = bp_deg_x(a), dy = bp_deg_y(a);
  for (int i = 1; i <= dx; ++i) xp.push_back(bp_mul(t, xp.back(), X));
  for (int j = 1; j <= dy; ++j) yp.push_back(bp_mul(t, yp.back(), Y));
  BiPoly r;
  for (const auto& [e, c] : a.terms)
    r = bp_add(r, bp_scale(t, bp_mul(t, xp[e.first], yp[e.second]), c));
  return r;
}

BiPoly bp_shift(const Tower& t, const BiPoly& a, const TowerElem& cx,
                const TowerElem& cy) {
  if (cx.is_zero() && cy.is_zero()) return a;
  return bp_compose(t, a, bp_add(bp_x(), bp_const(cx)),
                    bp_add(bp_y(), bp_const(cy)));
}

UPoly bp_at_x0(const BiPoly& a) {
  UPoly r;
  for (const auto& [e, c] : a.terms)
    if (e.first == 0) {
      if (static_cast<int>(r.size()) <= e.second) r.resize(e.second + 1);
      r[e.second] = c;
    }
  return up_trim(std::move(r));
}

UPoly bp_at_y0(const BiPoly& a) {
  UPoly r;
  for (const auto& [e, c] : a.terms)
    if (e.second == 0) {
      if (static_cast<int>(r.size()) <= e.first) r.resize(e.first + 1);
      r[e.first] = c;
    }
  return up_trim(std::move(r));
}

BiPoly bp_mul_monomial(const BiPoly& a, int i, int j) {
  BiPoly r;
  for (const auto& [e, c] : a.terms) r.terms[{e.first + i, e.second + j}] = c;
  return r;
}

BiPoly bp_div_monomial(const BiPoly& a, int i, int j) {
  BiPoly r;
  for (const auto& [e, c] : a.terms) {
    assert(e.first >= i && e.second >= j);
    r.terms[{e.first - i, e.second - j}] = c;
  }
  return r;
}

std::pair<int, int> bp_monomial_content(const BiPoly& a) {
  assert(!a.is_zero());
  int mi = 1 << 29, mj = 1 << 29;
  for (const auto& [e, c] : a.terms) {
    mi = std::min(mi, e.first);
    mj = std::min(mj, e.second);
  }
  return {mi, mj};
}

// ---------------------------------------------------------------------------
// gcd via K[x][y] with primitive pseudo-remainder sequences

namespace {

using VPoly = std::vector<UPoly>;  // coefficient (poly in x) of y^j at index j

VPoly vp_trim(VPoly p) {
  while (!p.empty() && p.back().empty()) p.pop_back();
  return p;
}

VPoly to_vpoly(const BiPoly& a) {
  VPoly r(bp_deg_y(a) + 1);
  for (const auto& [e, c] : a.terms) {
    UPoly& u = r[e.second];
    if (static_cast<int>(u.size()) <= e.first) u.resize(e.first + 1);
    u[e.first] = c;
  }
  for (auto& u : r) u = up_trim(std::move(u));
  return vp_trim(std::move(r));
}

BiPoly from_vpoly(const VPoly& p) {
  BiPoly r;
  for (size_t j = 0; j < p.size(); ++j)
    for (size_t i = 0; i < p[j].size(); ++i)
      if (!p[j][i].is_zero())
        r.terms[{static_cast<int>(i), static_cast<int>(j)}] = p[j][i];
  return r;
}

UPoly vp_content(const Tower& t, const VPoly& p) {
  UPoly g;
  for (const auto& u : p)
    if (!u.empty()) g = g.empty() ? up_monic(t, u) : up_gcd(t, g, u);
  return g;
}

VPoly vp_divexact_u(const Tower& t, const VPoly& p, const UPoly& d) {
  VPoly r(p.size());
  for (size_t j = 0; j < p.size(); ++j) {
    if (p[j].empty()) continue;
    auto [q, rem] = up_divmod(t, p[j], d);
    assert(rem.empty());
    r[j] = std::move(q);
  }
  return r;
}

VPoly vp_mul_u(const Tower& t, const VPoly& p, const UPoly& c) {
  VPoly r(p.size());
  for (size_t j = 0; j < p.size(); ++j)
    if (!p[j].empty()) r[j] = up_mul(t, p[j], c);
  return r;
}

VPoly vp_sub(const VPoly& a, const VPoly& b) {
  VPoly r(std::max(a.size(), b.size()));
  for (size_t j = 0; j < r.size(); ++j) {
    UPoly x = j < a.size() ? a[j] : UPoly{};
    UPoly y = j < b.size() ? b[j] : UPoly{};
    r[j] = up_sub(x, y);
  }
  return vp_trim(std::move(r));
}

// y-shift multiply: p * y^k
VPoly vp_shift_y(const VPoly& p, int k) {
  VPoly r(p.size() + k);
  for (size_t j = 0; j < p.size(); ++j) r[j + k] = p[j];
  return r;
}

// pseudo-remainder of a by b in y (lc(b)^(da-db+1) * a mod b)
VPoly vp_prem(const Tower& t, VPoly a, const VPoly& b) {
  int db = static_cast<int>(b.size()) - 1;
  const UPoly& lcb = b.back();
  a = vp_trim(std::move(a));
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    int da = static_cast<int>(a.size()) - 1;
    UPoly lca = a.back();
    VPoly scaled = vp_mul_u(t, a, lcb);
    VPoly sub = vp_shift_y(vp_mul_u(t, b, lca), da - db);
    a = vp_sub(scaled, sub);
  }
  return a;
}

VPoly vp_pp(const Tower& t, const VPoly& p) {
  if (p.empty()) return p;
  return vp_divexact_u(t, p, vp_content(t, p));
}

}  // namespace

BiPoly bp_gcd(const Tower& t, const BiPoly& a, const BiPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  VPoly A = to_vpoly(a), B = to_vpoly(b);
  UPoly cont = up_gcd(t, vp_content(t, A), vp_content(t, B));
  A = vp_pp(t, A);
  B = vp_pp(t, B);
  if (A.size() < B.size()) std::swap(A, B);
  while (true) {
    if (B.size() <= 1) {
      // primitive parts coprime unless B vanished
      VPoly g = B.empty() ? A : VPoly{UPoly{TowerElem(1)}};
      g = vp_mul_u(t, g, cont);
      // normalize: monic leading y-coefficient
      UPoly lc = g.back();
      VPoly norm = vp_divexact_u(t, vp_mul_u(t, g, up_monic(t, lc)), lc);
      return from_vpoly(vp_trim(std::move(norm)));
    }
    VPoly r = vp_prem(t, A, B);
    A = std::move(B);
    B = vp_pp(t, vp_trim(std::move(r)));
  }
}

BiPoly bp_divexact(const Tower& t, const BiPoly& a, const BiPoly& b) {
  assert(!b.is_zero());
  if (a.is_zero()) return {};
  VPoly A = to_vpoly(a), B = to_vpoly(b);
  if (B.size() == 1) {
    // division by a poly in x alone
    VPoly q = vp_divexact_u(t, A, B[0]);
    return from_vpoly(vp_trim(std::move(q)));
  }
  // long division in y over K(x): coefficients stay polynomial because the
  // division is exact
  VPoly Q(A.size() >= B.size() ? A.size() - B.size() + 1 : 0);
  while (!A.empty() && A.size() >= B.size()) {
    // leading coefficient division must be exact in K[x]
    auto [qc, rem] = up_divmod(t, A.back(), B.back());
    assert(rem.empty() && "inexact bivariate division");
    size_t off = A.size() - B.size();
    Q[off] = qc;
    VPoly sub = vp_shift_y(vp_mul_u(t, B, qc), static_cast<int>(off));
    A = vp_sub(A, sub);
  }
  assert(A.empty() && "inexact bivariate division");
  return from_vpoly(vp_trim(std::move(Q)));
}

// ---------------------------------------------------------------------------
// intersection multiplicity via sheared resultants

namespace {

// resultant in y of two bivariate polys, via evaluation at rational x and
// interpolation; requires constant leading y-coefficients
BiPoly res_y(const Tower& t, const BiPoly& f, const BiPoly& g) {
  VPoly F = to_vpoly(f), G = to_vpoly(g);
  int dyf = static_cast<int>(F.size()) - 1, dyg = static_cast<int>(G.size()) - 1;
  int dxf = std::max(bp_deg_x(f), 0), dxg = std::max(bp_deg_x(g), 0);
  int D = dyf * dxg + dyg * dxf;  // degree bound for the resultant
  std::vector<Rat> xs;
  std::vector<TowerElem> ys;
  for (int k = 0; k <= D; ++k) {
    Rat x0(k);
    // specialize x
    UPoly fu(F.size()), gu(G.size());
    for (size_t j = 0; j < F.size(); ++j)
      fu[j] = up_eval(t, F[j], te_rat(x0));
    for (size_t j = 0; j < G.size(); ++j)
      gu[j] = up_eval(t, G[j], te_rat(x0));
    // degrees are stable (constant leading coefficients)
    TowerElem lc = fu.back();
    UPoly fm = up_monic(t, fu);
    TowerElem r = up_resultant_monic(t, fm, gu);
    r = te_mul(t, r, te_pow(t, lc, static_cast<unsigned>(dyg)));
    ys.push_back(std::move(r));
    xs.push_back(std::move(x0));
  }
  UPoly R = up_interpolate(t, xs, ys);
  BiPoly out;
  for (size_t i = 0; i < R.size(); ++i)
    if (!R[i].is_zero()) out.terms[{static_cast<int>(i), 0}] = R[i];
  return out;
}

int ord_x(const BiPoly& p) {
  int m = 1 << 29;
  for (const auto& [e, c] : p.terms) m = std::min(m, e.first);
  return m;
}

bool lc_y_constant(const BiPoly& p) {
  int dy = bp_deg_y(p);
  for (const auto& [e, c] : p.terms)
    if (e.second == dy && e.first > 0) return false;
  return true;
}

}  // namespace

std::optional<int> bp_intersection_multiplicity(const Tower& t,
                                                const BiPoly& f,
                                                const BiPoly& g) {
  BiPoly h = bp_gcd(t, f, g);
  if (bp_deg_x(h) + bp_deg_y(h) > 0) {
    if (bp_eval(t, h, TowerElem(), TowerElem()).is_zero())
      return std::nullopt;
    // shared component missing the origin contributes nothing
    return bp_intersection_multiplicity(t, bp_divexact(t, f, h),
                                        bp_divexact(t, g, h));
  }
  for (long k = 0;; ++k) {
    // shear x -> x + k*y
    BiPoly X = bp_add(bp_x(), bp_scale_rat(bp_y(), Rat(k)));
    BiPoly fs = k == 0 ? f : bp_compose(t, f, X, bp_y());
    BiPoly gs = k == 0 ? g : bp_compose(t, g, X, bp_y());
    if (!lc_y_constant(fs) || !lc_y_constant(gs)) continue;
    if (bp_deg_y(fs) == 0 || bp_deg_y(gs) == 0) {
      // a curve with no y-dependence after shearing: handle via the other
      // variable by swapping roles below
    }
    // the only common root on x = 0 must be y = 0
    UPoly f0 = bp_at_x0(fs), g0 = bp_at_x0(gs);
    if (f0.empty() || g0.empty()) continue;  // component along x = 0
    UPoly c = up_gcd(t, f0, g0);
    // c must be a power of y
    bool power_of_y = true;
    for (size_t i = 0; i + 1 < c.size(); ++i)
      if (!c[i].is_zero()) power_of_y = false;
    if (!power_of_y) continue;
    BiPoly R = res_y(t, fs, gs);
    if (R.is_zero()) continue;  // degenerate; try next shear
    return ord_x(R);
  }
}

// ---------------------------------------------------------------------------
// printing

std::string te_print(const Tower& t, const TowerElem& a) {
  if (a.lvl == 0) return rat_str(a.q);
  bool is_i = false;
  const auto& mp = t.levels[a.lvl - 1].minpoly;
  if (mp.size() == 3 && mp[0] == TowerElem(1) && mp[1] == TowerElem() &&
      t.levels[a.lvl - 1].im_lo > 0)
    is_i = true;
  std::string gen = is_i ? "i" : "g" + std::to_string(a.lvl);
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (size_t k = a.c.size(); k-- > 0;) {
    if (a.c[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << te_print(t, a.c[k]);
    if (k >= 1) os << "*" << gen;
    if (k >= 2) os << "^" << k;
  }
  os << ")";
  return os.str();
}

std::string bp_print(const Tower& t, const BiPoly& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : a.terms) {
    std::string cs = te_print(t, c);
    bool neg = false;
    if (cs.size() > 1 && cs[0] == '-' && cs.find('(') == std::string::npos) {
      neg = true;
      cs = cs.substr(1);
    }
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool has_var = e.first > 0 || e.second > 0;
    bool unit_coeff = (cs == "1");
    if (!unit_coeff || !has_var) os << cs;
    if (!unit_coeff && has_var) os << "*";
    if (e.first > 0) {
      os << "x";
      if (e.first > 1) os << "^" << e.first;
      if (e.second > 0) os << "*";
    }
    if (e.second > 0) {
      os << "y";
      if (e.second > 1) os << "^" << e.second;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// forms

int form_order(const OneForm& w) {
  if (w.a.is_zero() && w.b.is_zero()) throw std::domain_error("zero-input");
  if (w.a.is_zero()) return bp_order(w.b);
  if (w.b.is_zero()) return bp_order(w.a);
  return std::min(bp_order(w.a), bp_order(w.b));
}

OneForm form_d(const BiPoly& p) { return {bp_dx(p), bp_dy(p), false}; }

std::pair<OneForm, BiPoly> strip_common_factor(const Tower& t,
                                               const OneForm& w) {
  if (w.a.is_zero() || w.b.is_zero()) {
    const BiPoly& nz = w.a.is_zero() ? w.b : w.a;
    auto [mi, mj] = bp_monomial_content(nz);
    BiPoly fac = bp_term(mi, mj, TowerElem(1));
    BiPoly red = bp_div_monomial(nz, mi, mj);
    if (w.a.is_zero()) return {{bp_zero(), red, true}, fac};
    return {{red, bp_zero(), true}, fac};
  }
  BiPoly g = bp_gcd(t, w.a, w.b);
  if (bp_deg_x(g) + bp_deg_y(g) == 0)
    return {{w.a, w.b, true}, bp_const(TowerElem(1))};
  OneForm red{bp_divexact(t, w.a, g), bp_divexact(t, w.b, g), true};
  return {red, g};
}

OneForm log_to_form(const Tower& t, const LogPresentation& lp) {
  // eta * prod f_i = sum lambda_i (prod_{j != i} f_j) df_i + remainder * prod
  BiPoly prod = bp_const(TowerElem(1));
  for (const auto& [lam, f] : lp.pairs) prod = bp_mul(t, prod, f);
  BiPoly A = bp_zero(), B = bp_zero();
  for (size_t i = 0; i < lp.pairs.size(); ++i) {
    BiPoly rest = bp_const(lp.pairs[i].first);
    for (size_t j = 0; j < lp.pairs.size(); ++j)
      if (j != i) rest = bp_mul(t, rest, lp.pairs[j].second);
    A = bp_add(A, bp_mul(t, rest, bp_dx(lp.pairs[i].second)));
    B = bp_add(B, bp_mul(t, rest, bp_dy(lp.pairs[i].second)));
  }
  if (lp.remainder) {
    A = bp_add(A, bp_mul(t, lp.remainder->a, prod));
    B = bp_add(B, bp_mul(t, lp.remainder->b, prod));
  }
  return strip_common_factor(t, {A, B, false}).first;
}

}  // namespace folmod
