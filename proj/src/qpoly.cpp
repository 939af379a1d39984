#include "folmod/qpoly.hpp"

#include <algorithm>
#include <cassert>

namespace folmod {

QPoly qp_trim(QPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

QPoly qp_add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return qp_trim(std::move(r));
}

QPoly qp_sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return qp_trim(std::move(r));
}

QPoly qp_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return qp_trim(std::move(r));
}

QPoly qp_scale(const QPoly& a, const Rat& c) {
  if (c == 0) return {};
  QPoly r = a;
  for (auto& x : r) x *= c;
  return r;
}

std::pair<QPoly, QPoly> qp_divmod(const QPoly& a, const QPoly& b) {
  assert(!b.empty());
  QPoly rem = a;
  if (a.size() < b.size()) return {{}, rem};
  QPoly quot(a.size() - b.size() + 1, Rat(0));
  for (int i = static_cast<int>(rem.size()) - 1;
       i >= static_cast<int>(b.size()) - 1; --i) {
    if (rem[i] == 0) continue;
    Rat c = rem[i] / b.back();
    quot[i - (b.size() - 1)] = c;
    for (size_t j = 0; j < b.size(); ++j) rem[i - (b.size() - 1) + j] -= c * b[j];
  }
  return {qp_trim(std::move(quot)), qp_trim(std::move(rem))};
}

QPoly qp_derivative(const QPoly& a) {
  if (a.size() <= 1) return {};
  QPoly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * Rat(Int(i));
  return qp_trim(std::move(r));
}

QPoly qp_monic(const QPoly& a) {
  if (a.empty()) return a;
  QPoly r = a;
  Rat lc = r.back();
  for (auto& x : r) x /= lc;
  return r;
}

QPoly qp_gcd(QPoly a, QPoly b) {
  while (!b.empty()) {
    auto r = qp_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return qp_monic(a);
}

Rat qp_eval(const QPoly& a, const Rat& x) {
  Rat v(0);
  for (auto it = a.rbegin(); it != a.rend(); ++it) v = v * x + *it;
  return v;
}

QPoly qp_shift(const QPoly& a, const Rat& c) {
  // Horner: p(x+c) = (...((a_n)(x+c) + a_{n-1})(x+c) ...)
  QPoly r;
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    // r = r*(x+c) + *it
    QPoly next(r.size() + 1, Rat(0));
    for (size_t i = 0; i < r.size(); ++i) {
      next[i + 1] += r[i];
      next[i] += r[i] * c;
    }
    if (next.empty()) next.push_back(Rat(0));
    next[0] += *it;
    r = qp_trim(std::move(next));
  }
  return r;
}

std::vector<std::pair<QPoly, int>> qp_squarefree(const QPoly& p) {
  std::vector<std::pair<QPoly, int>> out;
  QPoly f = qp_monic(p);
  if (qp_deg(f) <= 0) return out;
  QPoly df = qp_derivative(f);
  QPoly a = qp_gcd(f, df);
  QPoly b = qp_divmod(f, a).first;        // product of factors to mult 1
  QPoly c = qp_divmod(df, a).first;
  QPoly d = qp_sub(c, qp_derivative(b));
  int mult = 1;
  while (qp_deg(b) > 0) {
    QPoly g = qp_gcd(b, d);
    if (qp_deg(g) > 0) out.emplace_back(qp_monic(g), mult);
    b = qp_divmod(b, g).first;
    c = qp_divmod(d, g).first;
    d = qp_sub(c, qp_derivative(b));
    ++mult;
  }
  return out;
}

namespace {

int sign_changes(const std::vector<QPoly>& sturm, const Rat& x) {
  int changes = 0, last = 0;
  for (const auto& s : sturm) {
    int sg = rat_sign(qp_eval(s, x));
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++changes;
    last = sg;
  }
  return changes;
}

}  // namespace

std::vector<std::pair<Rat, Rat>> qp_isolate_real_roots(const QPoly& p) {
  std::vector<std::pair<Rat, Rat>> out;
  QPoly f = qp_monic(p);
  if (qp_deg(f) <= 0) return out;
  std::vector<QPoly> sturm{f, qp_derivative(f)};
  while (!sturm.back().empty()) {
    auto r = qp_divmod(sturm[sturm.size() - 2], sturm.back()).second;
    sturm.push_back(qp_scale(r, Rat(-1)));
  }
  sturm.pop_back();
  // Cauchy bound.
  Rat bound(1);
  for (const auto& c : f)
    if (abs(c) + 1 > bound) bound = abs(c) + 1;
  // refine [lo, hi) ranges by bisection until each holds <= 1 root
  struct Range { Rat lo, hi; int n; };
  auto count = [&](const Rat& lo, const Rat& hi) {
    return sign_changes(sturm, lo) - sign_changes(sturm, hi);
  };
  std::vector<Range> work{{-bound, bound, count(-bound, bound)}};
  while (!work.empty()) {
    Range r = work.back();
    work.pop_back();
    if (r.n == 0) continue;
    if (r.n == 1) {
      // shrink away endpoints that are roots (only possible at rational pts)
      Rat lo = r.lo, hi = r.hi;
      while (qp_eval(f, lo) == 0 || qp_eval(f, hi) == 0) {
        Rat mid = (lo + hi) / 2;
        if (qp_eval(f, mid) == 0) { lo = hi = mid; break; }
        if (count(lo, mid) == 1) hi = mid; else lo = mid;
      }
      out.emplace_back(lo, hi);
      continue;
    }
    Rat mid = (r.lo + r.hi) / 2;
    if (qp_eval(f, mid) == 0) {
      out.emplace_back(mid, mid);
      // perturb around the exact root to keep counting clean
      Rat eps = (r.hi - r.lo) / 1024;
      Rat ml = mid - eps, mr = mid + eps;
      while (qp_eval(f, ml) == 0) ml = (r.lo + ml) / 2;
      while (qp_eval(f, mr) == 0) mr = (mr + r.hi) / 2;
      work.push_back({r.lo, ml, count(r.lo, ml)});
      work.push_back({mr, r.hi, count(mr, r.hi)});
    } else {
      work.push_back({r.lo, mid, count(r.lo, mid)});
      work.push_back({mid, r.hi, count(mid, r.hi)});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::vector<Rat> qp_rational_roots(const QPoly& p) {
  std::vector<Rat> out;
  QPoly f = qp_trim(p);
  if (f.empty()) return out;
  // clear denominators -> integer poly
  Int lcm(1);
  for (const auto& c : f) {
    Int d = rat_den(c);
    lcm = lcm / gcd(lcm, d) * d;
  }
  std::vector<Int> zp;
  zp.reserve(f.size());
  for (const auto& c : f) zp.push_back(Int(c * Rat(lcm)));
  size_t low = 0;
  while (low < zp.size() && zp[low] == 0) ++low;
  if (low > 0) out.push_back(Rat(0));
  if (low >= zp.size()) return out;
  Int a0 = abs(zp[low]), an = abs(zp.back());
  auto divisors = [](Int n) {
    std::vector<Int> ds;
    for (Int d = 1; d * d <= n; ++d)
      if (n % d == 0) {
        ds.push_back(d);
        if (d * d != n) ds.push_back(n / d);
      }
    return ds;
  };
  for (const Int& p0 : divisors(a0))
    for (const Int& q0 : divisors(an))
      for (int sg : {1, -1}) {
        Rat cand(sg * p0, q0);
        if (qp_eval(f, cand) == 0 &&
            std::find(out.begin(), out.end(), cand) == out.end())
          out.push_back(cand);
      }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace folmod
