#include "folmod/towerfactor.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "folmod/qfactor.hpp"

namespace folmod {

namespace {

// p viewed as a polynomial in gen_lvl (coefficients of lvl strictly below)
std::vector<TowerElem> gen_coords(const TowerElem& a, int lvl) {
  if (a.lvl == lvl && lvl > 0) return a.c;
  if (a.is_zero()) return {};
  return {a};
}

// Factors a squarefree monic p whose coefficients live at tower height <= h
// into monic irreducibles over the full tower of height h (Trager's norm
// method: shift by multiples of the top generator until the norm down one
// level is squarefree, recurse, pull factors back up by gcd).
std::vector<UPoly> factor_sqfree(const Tower& t, const UPoly& p, int h) {
  if (up_deg(p) <= 1) return {p};
  if (h == 0) {
    std::vector<UPoly> out;
    for (const auto& [f, m] : qp_factor(up_to_qpoly(p))) {
      assert(m == 1);
      out.push_back(up_from_qpoly(f));
    }
    return out;
  }
  const auto& mp = t.levels[h - 1].minpoly;  // monic, coeffs height h-1
  int md = static_cast<int>(mp.size()) - 1;
  TowerElem theta = te_gen(h);
  for (long s = 0;; ++s) {
    UPoly q = s == 0 ? p : up_shift(t, p, te_scale_rat(theta, Rat(-s)));
    // norm: N(x) = Res_t(minpoly(t), q with theta replaced by t), computed
    // by evaluation at rationals and interpolation
    int D = md * up_deg(q);
    std::vector<Rat> xs;
    std::vector<TowerElem> ys;
    for (int k = 0; k <= D; ++k) {
      Rat x0(k);
      TowerElem v = up_eval(t, q, te_rat(x0));
      UPoly in_t = gen_coords(v, h);  // poly in t over height h-1
      ys.push_back(up_resultant_monic(t, mp, in_t));
      xs.push_back(std::move(x0));
    }
    UPoly N = up_interpolate(t, xs, ys);
    if (up_deg(N) != D) continue;  // degenerate shift
    UPoly g = up_gcd(t, N, up_derivative(N));
    if (up_deg(g) != 0) continue;
    std::vector<UPoly> nf = factor_sqfree(t, up_monic(t, N), h - 1);
    std::vector<UPoly> out;
    int total = 0;
    for (const auto& Ni : nf) {
      UPoly gi = up_gcd(t, q, Ni);
      if (up_deg(gi) == 0) continue;
      total += up_deg(gi);
      out.push_back(s == 0 ? gi
                           : up_shift(t, gi, te_scale_rat(theta, Rat(s))));
    }
    assert(total == up_deg(p));
    return out;
  }
}

// Yun's algorithm over the tower field.
std::vector<std::pair<UPoly, int>> up_squarefree(const Tower& t,
                                                 const UPoly& p) {
  std::vector<std::pair<UPoly, int>> out;
  UPoly f = up_monic(t, p);
  if (up_deg(f) <= 0) return out;
  UPoly df = up_derivative(f);
  UPoly a = up_gcd(t, f, df);
  UPoly b = up_divmod(t, f, a).first;
  UPoly c = up_divmod(t, df, a).first;
  UPoly d = up_sub(c, up_derivative(b));
  int mult = 1;
  while (up_deg(b) > 0) {
    UPoly g = up_gcd(t, b, d);
    if (up_deg(g) > 0) out.emplace_back(g, mult);
    b = up_divmod(t, b, g).first;
    c = up_divmod(t, d, g).first;
    d = up_sub(c, up_derivative(b));
    ++mult;
  }
  return out;
}

}  // namespace

std::vector<std::pair<UPoly, int>> up_factor(const Tower& t, const UPoly& p) {
  std::vector<std::pair<UPoly, int>> out;
  UPoly f = up_trim(p);
  if (up_deg(f) <= 0) return out;
  for (const auto& [part, mult] : up_squarefree(t, f))
    for (const auto& irr : factor_sqfree(t, part, t.height()))
      out.emplace_back(irr, mult);
  return out;
}

bool up_irreducible(const Tower& t, const UPoly& p) {
  auto fs = up_factor(t, p);
  return fs.size() == 1 && fs[0].second == 1 &&
         up_deg(fs[0].first) == up_deg(p);
}

// ---------------------------------------------------------------------------

std::complex<double> te_approx(const Tower& t, const TowerElem& a) {
  if (a.lvl == 0)
    return {static_cast<double>(a.q.convert_to<double>()), 0.0};
  const TowerLevel& L = t.levels[a.lvl - 1];
  std::complex<double> g(
      ((L.re_lo + L.re_hi) / 2).convert_to<double>(),
      ((L.im_lo + L.im_hi) / 2).convert_to<double>());
  std::complex<double> v = 0;
  for (auto it = a.c.rbegin(); it != a.c.rend(); ++it)
    v = v * g + te_approx(t, *it);
  return v;
}

namespace {

std::vector<std::complex<double>> numeric_roots(const Tower& t,
                                                const UPoly& p) {
  // Durand-Kerner
  size_t n = p.size() - 1;
  std::vector<std::complex<double>> c(p.size());
  for (size_t i = 0; i < p.size(); ++i) c[i] = te_approx(t, p[i]);
  for (auto& x : c) x /= c.back();
  std::vector<std::complex<double>> r(n);
  std::complex<double> seed(0.4, 0.9);
  std::complex<double> acc = 1;
  for (size_t i = 0; i < n; ++i) {
    r[i] = acc;
    acc *= seed;
  }
  for (int it = 0; it < 500; ++it) {
    double moved = 0;
    for (size_t i = 0; i < n; ++i) {
      std::complex<double> num = 0;
      for (size_t k = n + 1; k-- > 0;) num = num * r[i] + c[k];
      std::complex<double> den = 1;
      for (size_t j = 0; j < n; ++j)
        if (j != i) den *= r[i] - r[j];
      std::complex<double> delta = num / den;
      r[i] -= delta;
      moved = std::max(moved, std::abs(delta));
    }
    if (moved < 1e-13) break;
  }
  return r;
}

Rat rat_approx(double x, long denom = 1L << 30) {
  return Rat(Int(static_cast<long long>(std::floor(x * denom))), Int(denom));
}

}  // namespace

AdjoinResult adjoin_root(Tower t, UPoly p, Rat re_lo, Rat re_hi, Rat im_lo,
                         Rat im_hi) {
  p = up_monic(t, up_trim(std::move(p)));
  if (!up_irreducible(t, p))
    throw ReduciblePolynomialError("reducible-polynomial");
  if (up_deg(p) == 1) {
    TowerElem root = te_neg(p[0]);
    return {std::move(t), std::move(root)};
  }
  if (im_lo == 0 && im_hi == 0) {
    // purely real region: count roots when coefficients are rational
    bool rational = true;
    for (const auto& c : p)
      if (c.lvl != 0) rational = false;
    if (rational) {
      QPoly f = up_to_qpoly(p);
      int inside = 0;
      for (auto [lo, hi] : qp_isolate_real_roots(f)) {
        // shrink until the interval is on one side of the region or within
        while (lo < hi && !(hi < re_lo || lo > re_hi) &&
               !(lo >= re_lo && hi <= re_hi)) {
          Rat mid = (lo + hi) / 2;
          if (qp_eval(f, mid) == 0) {
            lo = hi = mid;
            break;
          }
          if (rat_sign(qp_eval(f, lo)) != rat_sign(qp_eval(f, mid)))
            hi = mid;
          else
            lo = mid;
        }
        if (lo >= re_lo && hi <= re_hi) ++inside;
      }
      if (inside != 1) throw AmbiguousRegionError("ambiguous-region");
    }
  }
  t.extend(p, std::move(re_lo), std::move(re_hi), std::move(im_lo),
           std::move(im_hi));
  TowerElem root = te_gen(t.height());
  return {std::move(t), std::move(root)};
}

AdjoinResult adjoin_any_root(Tower t, UPoly p) {
  p = up_monic(t, up_trim(std::move(p)));
  if (up_deg(p) == 1) {
    TowerElem root = te_neg(p[0]);
    return {std::move(t), std::move(root)};
  }
  bool rational = true;
  for (const auto& c : p)
    if (c.lvl != 0) rational = false;
  if (rational) {
    auto ivs = qp_isolate_real_roots(up_to_qpoly(p));
    if (!ivs.empty()) {
      auto [lo, hi] = ivs.front();
      return adjoin_root(std::move(t), std::move(p), lo, hi, Rat(0), Rat(0));
    }
  }
  auto roots = numeric_roots(t, p);
  // prefer a certified real interval: look for a numeric root near the real
  // axis and a sign change bracketing it
  double gap = 1e9;
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j < roots.size(); ++j)
      gap = std::min(gap, std::abs(roots[i] - roots[j]));
  Rat half = rat_approx(std::max(gap / 4, 1e-9));
  for (const auto& r : roots) {
    if (std::abs(r.imag()) > 1e-9) continue;
    Rat mid = rat_approx(r.real());
    Rat lo = mid - half, hi = mid + half;
    try {
      int s_lo = te_sign(t, up_eval(t, p, te_rat(lo)));
      int s_hi = te_sign(t, up_eval(t, p, te_rat(hi)));
      if (s_lo != 0 && s_hi != 0 && s_lo != s_hi) {
        t.extend(p, lo, hi, Rat(0), Rat(0));
        TowerElem root = te_gen(t.height());
        return {std::move(t), std::move(root)};
      }
    } catch (const NotRealError&) {
      break;
    }
  }
  // complex root: numeric box, kept off the real axis
  std::complex<double> pick = roots.front();
  for (const auto& r : roots)
    if (r.imag() > pick.imag()) pick = r;
  Rat re = rat_approx(pick.real()), im = rat_approx(pick.imag());
  Rat w = half;
  if (im > 0 && im - w <= 0) w = im / 2;
  t.extend(p, re - w, re + w, im - w, im + w);
  TowerElem root = te_gen(t.height());
  return {std::move(t), std::move(root)};
}

// ---------------------------------------------------------------------------

EigenRatio eigen_ratio_class(const Tower& t, const TowerElem& trace,
                             const TowerElem& det) {
  if (det.is_zero()) {
    if (trace.is_zero()) return {RatioKind::both_zero, Rat(0)};
    return {RatioKind::one_zero, Rat(0)};
  }
  // a rational ratio r satisfies det*r^2 + (2 det - trace^2)*r + det = 0,
  // componentwise over the Q-basis of the tower
  TowerElem B = te_sub(te_scale_rat(det, Rat(2)), te_mul(t, trace, trace));
  std::vector<Rat> qa = te_qcoords(t, det), qb = te_qcoords(t, B);
  QPoly g;
  bool first = true;
  for (size_t k = 0; k < qa.size(); ++k) {
    QPoly quad = qp_trim({qa[k], qb[k], qa[k]});
    if (qp_is_zero(quad)) continue;
    g = first ? qp_monic(quad) : qp_gcd(g, quad);
    first = false;
  }
  assert(!first);
  auto roots = qp_rational_roots(g);
  if (roots.empty()) return {RatioKind::irrational, Rat(0)};
  // roots come in pairs r, 1/r; report the representative with |r| <= 1
  Rat r = roots.front();
  for (const auto& cand : roots)
    if (abs(cand) <= 1) r = cand;
  assert(r != 0);
  if (r > 0) return {RatioKind::pos_rational, r};
  return {RatioKind::nonpos_rational, r};
}

}  // namespace folmod
