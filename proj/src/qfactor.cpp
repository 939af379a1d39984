#include "folmod/qfactor.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <functional>
#include <random>

namespace folmod {

namespace {

// ---------- arithmetic mod a word-size prime --------------------------------

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>;  // coeff of x^i at index i, back() != 0

u64 addm(u64 a, u64 b, u64 p) { u64 s = a + b; return s >= p ? s - p : s; }
u64 subm(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
u64 mulm(u64 a, u64 b, u64 p) {
  return static_cast<u64>((static_cast<__uint128_t>(a) * b) % p);
}
u64 powm(u64 a, u64 e, u64 p) {
  u64 r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulm(r, a, p);
    a = mulm(a, a, p);
    e >>= 1;
  }
  return r;
}
u64 invm(u64 a, u64 p) { return powm(a % p, p - 2, p); }

ModPoly mp_trim(ModPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

ModPoly mp_mul(const ModPoly& a, const ModPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = addm(r[i + j], mulm(a[i], b[j], p), p);
  return mp_trim(std::move(r));
}

ModPoly mp_mod(ModPoly a, const ModPoly& b, u64 p) {
  u64 inv_lc = invm(b.back(), p);
  a = mp_trim(std::move(a));
  while (a.size() >= b.size()) {
    u64 c = mulm(a.back(), inv_lc, p);
    size_t off = a.size() - b.size();
    for (size_t j = 0; j < b.size(); ++j)
      a[off + j] = subm(a[off + j], mulm(c, b[j], p), p);
    a.pop_back();
    a = mp_trim(std::move(a));
  }
  return a;
}

ModPoly mp_divexact(ModPoly a, const ModPoly& b, u64 p) {
  u64 inv_lc = invm(b.back(), p);
  ModPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  a = mp_trim(std::move(a));
  while (a.size() >= b.size()) {
    u64 c = mulm(a.back(), inv_lc, p);
    size_t off = a.size() - b.size();
    q[off] = c;
    for (size_t j = 0; j < b.size(); ++j)
      a[off + j] = subm(a[off + j], mulm(c, b[j], p), p);
    a.pop_back();
    a = mp_trim(std::move(a));
  }
  return mp_trim(std::move(q));
}

ModPoly mp_gcd(ModPoly a, ModPoly b, u64 p) {
  while (!b.empty()) {
    ModPoly r = mp_mod(std::move(a), b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    u64 inv_lc = invm(a.back(), p);
    for (auto& c : a) c = mulm(c, inv_lc, p);
  }
  return a;
}

ModPoly mp_powmod(ModPoly base, Int e, const ModPoly& m, u64 p) {
  ModPoly r{1};
  base = mp_mod(std::move(base), m, p);
  while (e > 0) {
    if ((e & 1) != 0) r = mp_mod(mp_mul(r, base, p), m, p);
    base = mp_mod(mp_mul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

// Cantor-Zassenhaus on a squarefree monic f mod p (p odd).
std::vector<ModPoly> cz_factor(const ModPoly& f, u64 p, std::mt19937_64& rng) {
  std::vector<ModPoly> out;
  ModPoly x{0, 1};
  ModPoly h = x;
  ModPoly rest = f;
  size_t d = 0;
  while (rest.size() - 1 >= 2 * (d + 1)) {
    ++d;
    h = mp_powmod(std::move(h), Int(p), rest, p);
    ModPoly hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = subm(hx[1], 1, p);
    ModPoly g = mp_gcd(rest, mp_trim(std::move(hx)), p);
    if (g.size() > 1) {
      // equal-degree splitting of g into irreducibles of degree d
      Int exp = (boost::multiprecision::pow(Int(p), static_cast<unsigned>(d)) - 1) / 2;
      std::vector<ModPoly> stack{g};
      while (!stack.empty()) {
        ModPoly cur = stack.back();
        stack.pop_back();
        if (cur.size() - 1 == d) {
          out.push_back(cur);
          continue;
        }
        for (;;) {
          ModPoly r(cur.size() - 1, 0);
          for (auto& c : r) c = rng() % p;
          r = mp_trim(std::move(r));
          if (r.empty()) continue;
          ModPoly t = mp_powmod(r, exp, cur, p);
          if (t.empty()) continue;
          t[0] = addm(t[0], p - 1, p);
          t = mp_trim(std::move(t));
          ModPoly g2 = mp_gcd(cur, t, p);
          if (g2.size() > 1 && g2.size() < cur.size()) {
            stack.push_back(mp_divexact(cur, g2, p));
            stack.push_back(std::move(g2));
            break;
          }
        }
      }
      rest = mp_divexact(std::move(rest), g, p);
      h = mp_mod(std::move(h), rest, p);
    }
  }
  if (rest.size() > 1) out.push_back(rest);
  return out;
}

// ---------- integer polynomials and Hensel lifting --------------------------

using ZPoly = std::vector<Int>;

ZPoly zp_trim(ZPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

ZPoly zp_add(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return zp_trim(std::move(r));
}

ZPoly zp_sub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return zp_trim(std::move(r));
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return zp_trim(std::move(r));
}

Int mod_centered(Int a, const Int& m) {
  a %= m;
  if (a < 0) a += m;
  if (2 * a > m) a -= m;
  return a;
}

ZPoly zp_modm(ZPoly a, const Int& m) {
  for (auto& c : a) c = mod_centered(c, m);
  return zp_trim(std::move(a));
}

Int inv_mod(Int a, const Int& m) {
  a %= m;
  if (a < 0) a += m;
  Int old_r = a, r = m, old_s = 1, s = 0;
  while (r != 0) {
    Int q = old_r / r;
    Int t = old_r - q * r; old_r = r; r = t;
    t = old_s - q * s; old_s = s; s = t;
  }
  assert(old_r == 1);
  old_s %= m;
  if (old_s < 0) old_s += m;
  return old_s;
}

// divmod by b mod m, b with invertible leading coefficient mod m
std::pair<ZPoly, ZPoly> zp_divmod_mod(ZPoly a, const ZPoly& b, const Int& m) {
  Int lc_inv = inv_mod(b.back(), m);
  a = zp_modm(std::move(a), m);
  ZPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Int(0));
  while (a.size() >= b.size()) {
    Int c = mod_centered(a.back() * lc_inv, m);
    size_t off = a.size() - b.size();
    q[off] = c;
    for (size_t j = 0; j < b.size(); ++j)
      a[off + j] = mod_centered(a[off + j] - c * b[j], m);
    a.pop_back();
    a = zp_trim(std::move(a));
  }
  return {zp_trim(std::move(q)), std::move(a)};
}

struct HenselState {
  ZPoly g, h, s, t;  // f = g h, s g + t h = 1  (mod m)
};

// One quadratic Hensel step m -> m^2 (von zur Gathen & Gerhard, Alg. 15.10).
HenselState hensel_step(const ZPoly& f, HenselState st, const Int& m) {
  Int m2 = m * m;
  ZPoly e = zp_modm(zp_sub(f, zp_mul(st.g, st.h)), m2);
  auto [q, r] = zp_divmod_mod(zp_mul(st.s, e), st.h, m2);
  ZPoly gs = zp_modm(zp_add(st.g, zp_add(zp_mul(st.t, e), zp_mul(q, st.g))), m2);
  ZPoly hs = zp_modm(zp_add(st.h, r), m2);
  ZPoly b = zp_modm(zp_sub(zp_add(zp_mul(st.s, gs), zp_mul(st.t, hs)), ZPoly{Int(1)}), m2);
  auto [c, d] = zp_divmod_mod(zp_mul(st.s, b), hs, m2);
  ZPoly ss = zp_modm(zp_sub(st.s, d), m2);
  ZPoly ts = zp_modm(zp_sub(st.t, zp_add(zp_mul(st.t, b), zp_mul(c, gs))), m2);
  return {std::move(gs), std::move(hs), std::move(ss), std::move(ts)};
}

ZPoly to_zpoly(const ModPoly& a, u64 p) {
  ZPoly r;
  r.reserve(a.size());
  for (u64 c : a) r.push_back(mod_centered(Int(c), Int(p)));
  return zp_trim(std::move(r));
}

// Lift the monic modular factorization f = prod(factors) (mod p) to mod m,
// where m = p^(2^k) >= target. Returns the lifted factors mod m.
void hensel_lift_list(const ZPoly& f, std::vector<ModPoly> factors, u64 p,
                      const Int& target, std::vector<ZPoly>& out) {
  if (factors.size() == 1) {
    // f itself (reduced mod final modulus) is the lift
    Int m(p);
    while (m < target) m *= m;
    out.push_back(zp_modm(f, m));
    return;
  }
  size_t half = factors.size() / 2;
  ModPoly gm{1}, hm{1};
  for (size_t i = 0; i < half; ++i) gm = mp_mul(gm, factors[i], p);
  for (size_t i = half; i < factors.size(); ++i) hm = mp_mul(hm, factors[i], p);
  // Bezout over F_p via extended Euclid
  ModPoly r0 = gm, r1 = hm, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    ModPoly q = mp_divexact(r0, r1, p);
    ModPoly rem = mp_mod(r0, r1, p);
    ModPoly ns = mp_trim([&] {
      ModPoly v = mp_mul(q, s1, p);
      ModPoly w(std::max(s0.size(), v.size()), 0);
      for (size_t i = 0; i < s0.size(); ++i) w[i] = addm(w[i], s0[i], p);
      for (size_t i = 0; i < v.size(); ++i) w[i] = subm(w[i], v[i], p);
      return w;
    }());
    ModPoly nt = mp_trim([&] {
      ModPoly v = mp_mul(q, t1, p);
      ModPoly w(std::max(t0.size(), v.size()), 0);
      for (size_t i = 0; i < t0.size(); ++i) w[i] = addm(w[i], t0[i], p);
      for (size_t i = 0; i < v.size(); ++i) w[i] = subm(w[i], v[i], p);
      return w;
    }());
    r0 = std::move(r1); r1 = std::move(rem);
    s0 = std::move(s1); s1 = std::move(ns);
    t0 = std::move(t1); t1 = std::move(nt);
  }
  u64 c_inv = invm(r0[0], p);
  for (auto& c : s0) c = mulm(c, c_inv, p);
  for (auto& c : t0) c = mulm(c, c_inv, p);

  HenselState st{to_zpoly(gm, p), to_zpoly(hm, p), to_zpoly(s0, p), to_zpoly(t0, p)};
  Int m(p);
  while (m < target) {
    st = hensel_step(f, std::move(st), m);
    m *= m;
  }
  std::vector<ModPoly> left(factors.begin(), factors.begin() + half);
  std::vector<ModPoly> right(factors.begin() + half, factors.end());
  hensel_lift_list(st.g, std::move(left), p, target, out);
  hensel_lift_list(st.h, std::move(right), p, target, out);
}

// trial division of monic integer polynomials; returns quotient if exact
bool zp_try_divide(const ZPoly& a, const ZPoly& b, ZPoly& quot) {
  ZPoly rem = a;
  if (a.size() < b.size()) return false;
  ZPoly q(a.size() - b.size() + 1, Int(0));
  while (rem.size() >= b.size()) {
    if (rem.back() % b.back() != 0) return false;
    Int c = rem.back() / b.back();
    size_t off = rem.size() - b.size();
    q[off] = c;
    for (size_t j = 0; j < b.size(); ++j) rem[off + j] -= c * b[j];
    rem = zp_trim(std::move(rem));
    if (rem.empty()) break;
  }
  if (!rem.empty()) return false;
  quot = zp_trim(std::move(q));
  return true;
}

// Zassenhaus factorization of a squarefree monic integer polynomial.
std::vector<ZPoly> zassenhaus(const ZPoly& f) {
  size_t n = f.size() - 1;
  if (n <= 1) return {f};
  // choose an odd prime with squarefree reduction
  static const u64 kPrimes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41,
                                43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
                                101, 103, 107, 109, 113, 127, 131, 137};
  u64 p = 0;
  ModPoly fp;
  for (u64 cand : kPrimes) {
    ModPoly red;
    red.reserve(f.size());
    for (const Int& c : f) {
      Int cc = c % Int(cand);
      if (cc < 0) cc += Int(cand);
      red.push_back(static_cast<u64>(cc));
    }
    red = mp_trim(std::move(red));
    if (red.size() != f.size()) continue;  // lc vanished (cannot happen, monic)
    ModPoly dred;
    for (size_t i = 1; i < red.size(); ++i)
      dred.push_back(mulm(red[i], i % cand, cand));
    dred = mp_trim(std::move(dred));
    if (dred.empty()) continue;
    if (mp_gcd(red, dred, cand).size() == 1) {
      p = cand;
      fp = std::move(red);
      break;
    }
  }
  assert(p != 0 && "no suitable prime found");
  std::mt19937_64 rng(0x5eed5eedULL);
  std::vector<ModPoly> modular = cz_factor(fp, p, rng);
  std::sort(modular.begin(), modular.end());
  if (modular.size() == 1) return {f};
  // Mignotte-style bound on factor coefficients
  Rat norm2(0);
  for (const Int& c : f) norm2 += Rat(c * c);
  Int bound(1);
  while (Rat(bound * bound) < norm2) bound <<= 1;  // power-of-2 cover of 2-norm
  Int target = (Int(1) << static_cast<unsigned>(n + 1)) * bound * 2 + 1;
  std::vector<ZPoly> lifted;
  hensel_lift_list(f, modular, p, target, lifted);
  Int m(p);
  while (m < target) m *= m;

  std::vector<ZPoly> out;
  ZPoly rest = f;
  std::vector<bool> used(lifted.size(), false);
  size_t remaining = lifted.size();
  for (size_t k = 1; k <= remaining && remaining > 0; ++k) {
    bool progress = true;
    while (progress && k <= remaining) {
      progress = false;
      // enumerate index subsets of size k among unused factors
      std::vector<size_t> avail;
      for (size_t i = 0; i < lifted.size(); ++i)
        if (!used[i]) avail.push_back(i);
      if (avail.size() < k) break;
      std::vector<size_t> idx(k);
      std::function<bool(size_t, size_t)> rec = [&](size_t pos, size_t start) {
        if (pos == k) {
          ZPoly cand{Int(1)};
          for (size_t j : idx) cand = zp_modm(zp_mul(cand, lifted[avail[j]]), m);
          ZPoly quot;
          if (zp_try_divide(rest, cand, quot)) {
            out.push_back(cand);
            rest = std::move(quot);
            for (size_t j : idx) used[avail[j]] = true;
            remaining -= k;
            return true;
          }
          return false;
        }
        for (size_t i = start; i < avail.size(); ++i) {
          idx[pos] = i;
          if (rec(pos + 1, i + 1)) return true;
        }
        return false;
      };
      if (rec(0, 0)) progress = true;
    }
  }
  if (rest.size() > 1) out.push_back(rest);
  return out;
}

QPoly zp_to_qp(const ZPoly& a) {
  QPoly r;
  r.reserve(a.size());
  for (const Int& c : a) r.push_back(Rat(c));
  return r;
}

// Factor a squarefree monic rational polynomial into monic irreducibles.
std::vector<QPoly> factor_squarefree(const QPoly& q) {
  int n = qp_deg(q);
  if (n <= 1) return {q};
  // clear denominators
  Int lcm(1);
  for (const Rat& c : q) {
    Int d = rat_den(c);
    lcm = lcm / gcd(lcm, d) * d;
  }
  ZPoly F;
  F.reserve(q.size());
  for (const Rat& c : q) F.push_back(Int(c * Rat(lcm)));
  // monicize: G(y) = a^(n-1) F(y/a), a = lc(F)
  Int a = F.back();
  ZPoly G(F.size());
  G[n] = 1;
  Int pw(1);
  for (int i = n - 1; i >= 0; --i) {
    G[i] = F[i] * pw;
    pw *= a;
  }
  std::vector<ZPoly> gf = zassenhaus(G);
  std::vector<QPoly> out;
  for (const ZPoly& gi : gf) {
    // back-substitute y = a x and re-normalize to monic over Q
    QPoly fi(gi.size());
    Rat apow(1);
    for (size_t i = 0; i < gi.size(); ++i) {
      fi[i] = Rat(gi[i]) * apow;
      apow *= Rat(a);
    }
    out.push_back(qp_monic(qp_trim(std::move(fi))));
  }
  std::sort(out.begin(), out.end(), [](const QPoly& x, const QPoly& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  return out;
}

}  // namespace

std::vector<std::pair<QPoly, int>> qp_factor(const QPoly& p) {
  std::vector<std::pair<QPoly, int>> out;
  QPoly f = qp_trim(p);
  if (qp_deg(f) <= 0) return out;
  for (const auto& [part, mult] : qp_squarefree(f))
    for (const QPoly& irr : factor_squarefree(part)) out.emplace_back(irr, mult);
  return out;
}

bool qp_irreducible(const QPoly& p) {
  auto fs = qp_factor(p);
  return fs.size() == 1 && fs[0].second == 1 && qp_deg(fs[0].first) == qp_deg(p);
}

}  // namespace folmod
