#include "folmod/upoly.hpp"

#include <cassert>
#include <stdexcept>

namespace folmod {

UPoly up_trim(UPoly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

UPoly up_from_qpoly(const QPoly& p) {
  UPoly r;
  r.reserve(p.size());
  for (const auto& c : p) r.push_back(te_rat(c));
  return r;
}

QPoly up_to_qpoly(const UPoly& p) {
  QPoly r;
  r.reserve(p.size());
  for (const auto& c : p) {
    auto q = te_is_rational(c);
    if (!q) throw std::domain_error("polynomial has irrational coefficient");
    r.push_back(*q);
  }
  return r;
}

UPoly up_add(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    TowerElem x = i < a.size() ? a[i] : TowerElem();
    TowerElem y = i < b.size() ? b[i] : TowerElem();
    r[i] = te_add(x, y);
  }
  return up_trim(std::move(r));
}

UPoly up_sub(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    TowerElem x = i < a.size() ? a[i] : TowerElem();
    TowerElem y = i < b.size() ? b[i] : TowerElem();
    r[i] = te_sub(x, y);
  }
  return up_trim(std::move(r));
}

UPoly up_mul(const Tower& t, const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = te_add(r[i + j], te_mul(t, a[i], b[j]));
  return up_trim(std::move(r));
}

UPoly up_scale(const Tower& t, const UPoly& a, const TowerElem& c) {
  if (c.is_zero()) return {};
  UPoly r = a;
  for (auto& x : r) x = te_mul(t, x, c);
  return r;
}

std::pair<UPoly, UPoly> up_divmod(const Tower& t, const UPoly& a,
                                  const UPoly& b) {
  assert(!b.empty());
  TowerElem lc_inv = te_inv(t, b.back());
  UPoly rem = up_trim(a);
  UPoly quot(rem.size() >= b.size() ? rem.size() - b.size() + 1 : 0);
  while (rem.size() >= b.size()) {
    TowerElem c = te_mul(t, rem.back(), lc_inv);
    size_t off = rem.size() - b.size();
    quot[off] = c;
    for (size_t j = 0; j < b.size(); ++j)
      rem[off + j] = te_sub(rem[off + j], te_mul(t, c, b[j]));
    rem.pop_back();
    rem = up_trim(std::move(rem));
  }
  return {up_trim(std::move(quot)), std::move(rem)};
}

UPoly up_derivative(const UPoly& a) {
  if (a.size() <= 1) return {};
  UPoly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i)
    r[i - 1] = te_scale_rat(a[i], Rat(Int(i)));
  return up_trim(std::move(r));
}

UPoly up_monic(const Tower& t, const UPoly& a) {
  if (a.empty()) return a;
  return up_scale(t, a, te_inv(t, a.back()));
}

UPoly up_gcd(const Tower& t, UPoly a, UPoly b) {
  a = up_trim(std::move(a));
  b = up_trim(std::move(b));
  while (!b.empty()) {
    UPoly r = up_divmod(t, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return up_monic(t, a);
}

TowerElem up_eval(const Tower& t, const UPoly& a, const TowerElem& x) {
  TowerElem v;
  for (auto it = a.rbegin(); it != a.rend(); ++it)
    v = te_add(te_mul(t, v, x), *it);
  return v;
}

UPoly up_shift(const Tower& t, const UPoly& a, const TowerElem& c) {
  UPoly r;
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    UPoly next(r.size() + 1);
    for (size_t i = 0; i < r.size(); ++i) {
      next[i + 1] = te_add(next[i + 1], r[i]);
      next[i] = te_add(next[i], te_mul(t, r[i], c));
    }
    if (next.empty()) next.emplace_back();
    next[0] = te_add(next[0], *it);
    r = up_trim(std::move(next));
  }
  return r;
}

TowerElem up_resultant_monic(const Tower& t, const UPoly& a, const UPoly& b) {
  assert(!a.empty() && a.back() == TowerElem(1));
  int n = up_deg(a);
  if (n == 0) return TowerElem(1);
  UPoly r = up_divmod(t, b, a).second;
  if (r.empty()) return TowerElem();
  int m = up_deg(r);
  if (m == 0) return te_pow(t, r[0], static_cast<unsigned>(n));
  TowerElem lc = r.back();
  TowerElem res = te_pow(t, lc, static_cast<unsigned>(n));
  if ((n * m) % 2 == 1) res = te_neg(res);
  return te_mul(t, res, up_resultant_monic(t, up_monic(t, r), a));
}

UPoly up_interpolate(const Tower& t, const std::vector<Rat>& xs,
                     const std::vector<TowerElem>& ys) {
  assert(xs.size() == ys.size());
  // Newton form
  size_t n = xs.size();
  std::vector<TowerElem> dd = ys;  // divided differences
  for (size_t k = 1; k < n; ++k)
    for (size_t i = n - 1; i >= k; --i) {
      TowerElem num = te_sub(dd[i], dd[i - 1]);
      Rat den = xs[i] - xs[i - k];
      dd[i] = te_mul(t, num, te_rat(Rat(1) / den));
      if (i == k) break;
    }
  UPoly r;
  for (size_t i = n; i-- > 0;) {
    // r = r*(x - xs[i]) + dd[i]
    UPoly next(r.size() + 1);
    for (size_t j = 0; j < r.size(); ++j) {
      next[j + 1] = te_add(next[j + 1], r[j]);
      next[j] = te_add(next[j], te_mul(t, r[j], te_rat(-xs[i])));
    }
    if (next.empty()) next.emplace_back();
    next[0] = te_add(next[0], dd[i]);
    r = up_trim(std::move(next));
  }
  return r;
}

}  // namespace folmod
