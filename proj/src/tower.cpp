#include "folmod/tower.hpp"

#include <algorithm>
#include <cassert>

#include "json.hpp"

namespace folmod {

namespace {

using EPoly = std::vector<TowerElem>;  // poly in one generator, elem coeffs

EPoly ep_trim(EPoly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

// coordinates of a as a polynomial in gen_lvl (entries of lvl < given)
EPoly coords_at(const TowerElem& a, int lvl) {
  if (a.lvl == lvl && lvl > 0) return a.c;
  if (a.is_zero()) return {};
  return {a};
}

}  // namespace

int Tower::level_degree(int lvl) const {
  return static_cast<int>(levels[lvl - 1].minpoly.size()) - 1;
}

int Tower::total_degree() const {
  int d = 1;
  for (int k = 1; k <= height(); ++k) d *= level_degree(k);
  return d;
}

TowerElem te_rat(Rat v) { return TowerElem(std::move(v)); }
TowerElem te_int(long v) { return TowerElem(Rat(v)); }

TowerElem te_make(int lvl, std::vector<TowerElem> coords) {
  coords = ep_trim(std::move(coords));
  if (coords.empty()) return TowerElem();
  if (coords.size() == 1) return coords[0];
  TowerElem r;
  r.lvl = lvl;
  r.c = std::move(coords);
  for (const auto& e : r.c) assert(e.lvl < lvl);
  return r;
}

TowerElem te_gen(int lvl) {
  return te_make(lvl, {TowerElem(), TowerElem(1)});
}

TowerElem te_add(const TowerElem& a, const TowerElem& b) {
  if (a.lvl == 0 && b.lvl == 0) return te_rat(a.q + b.q);
  int L = std::max(a.lvl, b.lvl);
  EPoly ca = coords_at(a, L), cb = coords_at(b, L);
  EPoly r(std::max(ca.size(), cb.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < ca.size() && i < cb.size())
      r[i] = te_add(ca[i], cb[i]);
    else
      r[i] = i < ca.size() ? ca[i] : cb[i];
  }
  return te_make(L, std::move(r));
}

TowerElem te_neg(const TowerElem& a) {
  if (a.lvl == 0) return te_rat(-a.q);
  TowerElem r = a;
  for (auto& e : r.c) e = te_neg(e);
  return r;
}

TowerElem te_sub(const TowerElem& a, const TowerElem& b) {
  return te_add(a, te_neg(b));
}

TowerElem te_scale_rat(const TowerElem& a, const Rat& r) {
  if (r == 0) return TowerElem();
  if (a.lvl == 0) return te_rat(a.q * r);
  TowerElem out = a;
  for (auto& e : out.c) e = te_scale_rat(e, r);
  return out;
}

TowerElem te_mul(const Tower& t, const TowerElem& a, const TowerElem& b) {
  if (a.is_zero() || b.is_zero()) return TowerElem();
  if (a.lvl == 0 && b.lvl == 0) return te_rat(a.q * b.q);
  int L = std::max(a.lvl, b.lvl);
  EPoly ca = coords_at(a, L), cb = coords_at(b, L);
  EPoly prod(ca.size() + cb.size() - 1);
  for (size_t i = 0; i < ca.size(); ++i)
    for (size_t j = 0; j < cb.size(); ++j)
      prod[i + j] = te_add(prod[i + j], te_mul(t, ca[i], cb[j]));
  // reduce modulo the (monic) minimal polynomial of gen_L
  const EPoly& m = t.levels[L - 1].minpoly;
  prod = ep_trim(std::move(prod));
  while (prod.size() >= m.size()) {
    TowerElem lc = prod.back();
    size_t off = prod.size() - m.size();
    for (size_t j = 0; j + 1 < m.size(); ++j)
      prod[off + j] = te_sub(prod[off + j], te_mul(t, lc, m[j]));
    prod.pop_back();
    prod = ep_trim(std::move(prod));
  }
  return te_make(L, std::move(prod));
}

namespace {

std::pair<EPoly, EPoly> ep_divmod(const Tower& t, const EPoly& a,
                                  const EPoly& b) {
  assert(!b.empty());
  TowerElem lc_inv = te_inv(t, b.back());
  EPoly rem = a;
  EPoly quot(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  rem = ep_trim(std::move(rem));
  while (rem.size() >= b.size()) {
    TowerElem c = te_mul(t, rem.back(), lc_inv);
    size_t off = rem.size() - b.size();
    quot[off] = c;
    for (size_t j = 0; j < b.size(); ++j)
      rem[off + j] = te_sub(rem[off + j], te_mul(t, c, b[j]));
    rem.pop_back();
    rem = ep_trim(std::move(rem));
  }
  return {ep_trim(std::move(quot)), std::move(rem)};
}

}  // namespace

TowerElem te_inv(const Tower& t, const TowerElem& a) {
  if (a.is_zero()) throw std::domain_error("division-by-zero");
  if (a.lvl == 0) return te_rat(Rat(1) / a.q);
  int L = a.lvl;
  EPoly r0 = t.levels[L - 1].minpoly, r1 = a.c;
  EPoly t0, t1{TowerElem(1)};
  while (r1.size() > 1) {
    auto [q, r] = ep_divmod(t, r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    // t0, t1 = t1, t0 - q*t1
    EPoly qt(q.size() + t1.size() - 1);
    if (!q.empty() && !t1.empty())
      for (size_t i = 0; i < q.size(); ++i)
        for (size_t j = 0; j < t1.size(); ++j)
          qt[i + j] = te_add(qt[i + j], te_mul(t, q[i], t1[j]));
    EPoly nt(std::max(t0.size(), qt.size()));
    for (size_t i = 0; i < nt.size(); ++i) {
      TowerElem x = i < t0.size() ? t0[i] : TowerElem();
      TowerElem y = i < qt.size() ? qt[i] : TowerElem();
      nt[i] = te_sub(x, y);
    }
    t0 = std::move(t1);
    t1 = ep_trim(std::move(nt));
  }
  assert(!r1.empty() && "minimal polynomial not coprime with element");
  TowerElem c_inv = te_inv(t, r1[0]);
  for (auto& e : t1) e = te_mul(t, e, c_inv);
  return te_make(L, std::move(t1));
}

TowerElem te_div(const Tower& t, const TowerElem& a, const TowerElem& b) {
  return te_mul(t, a, te_inv(t, b));
}

TowerElem te_pow(const Tower& t, TowerElem a, unsigned e) {
  TowerElem r(1);
  while (e) {
    if (e & 1) r = te_mul(t, r, a);
    a = te_mul(t, a, a);
    e >>= 1;
  }
  return r;
}

std::optional<Rat> te_is_rational(const TowerElem& a) {
  if (a.lvl == 0) return a.q;
  return std::nullopt;
}

namespace {

void qcoords_rec(const Tower& t, const TowerElem& a, int height,
                 std::vector<Rat>& out, size_t base, size_t stride) {
  if (height == 0) {
    out[base] = a.q;
    return;
  }
  size_t sub = stride / t.level_degree(height);
  EPoly cs = coords_at(a, height);
  for (size_t k = 0; k < cs.size(); ++k)
    qcoords_rec(t, cs[k], height - 1, out, base + k * sub, sub);
}

}  // namespace

std::vector<Rat> te_qcoords(const Tower& t, const TowerElem& a) {
  size_t n = t.total_degree();
  std::vector<Rat> out(n, Rat(0));
  qcoords_rec(t, a, t.height(), out, 0, n);
  return out;
}

// ---------------------------------------------------------------------------
// sign decision via interval refinement

namespace {

struct IV {
  Rat lo, hi;
};

IV iv_add(const IV& a, const IV& b) { return {a.lo + b.lo, a.hi + b.hi}; }

IV iv_mul(const IV& a, const IV& b) {
  Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {std::min(std::min(p1, p2), std::min(p3, p4)),
          std::max(std::max(p1, p2), std::max(p3, p4))};
}

void collect_levels(const TowerElem& a, std::vector<bool>& used) {
  if (a.lvl == 0) return;
  used[a.lvl - 1] = true;
  for (const auto& e : a.c) collect_levels(e, used);
}

TowerElem eval_minpoly(const Tower& t, int lvl, const Rat& x) {
  const EPoly& m = t.levels[lvl - 1].minpoly;
  TowerElem v;
  TowerElem xe = te_rat(x);
  for (auto it = m.rbegin(); it != m.rend(); ++it)
    v = te_add(te_mul(t, v, xe), *it);
  return v;
}

// halves the isolating interval of a real-certified generator
void refine_level(const Tower& t, int lvl) {
  const TowerLevel& L = t.levels[lvl - 1];
  Rat mid = (L.re_lo + L.re_hi) / 2;
  int s_lo = te_sign(t, eval_minpoly(t, lvl, L.re_lo));
  int s_mid = te_sign(t, eval_minpoly(t, lvl, mid));
  assert(s_mid != 0 && "rational root of irreducible minimal polynomial");
  if (s_lo != s_mid)
    L.re_hi = mid;
  else
    L.re_lo = mid;
}

IV box(const Tower& t, const TowerElem& a) {
  if (a.lvl == 0) return {a.q, a.q};
  const TowerLevel& L = t.levels[a.lvl - 1];
  if (!L.real_certified)
    throw NotRealError("sign of element over a non-real generator");
  IV g{L.re_lo, L.re_hi};
  IV v{Rat(0), Rat(0)};
  for (auto it = a.c.rbegin(); it != a.c.rend(); ++it)
    v = iv_add(iv_mul(v, g), box(t, *it));
  return v;
}

}  // namespace

std::pair<Rat, Rat> te_enclosure(const Tower& t, const TowerElem& a,
                                 const Rat& eps) {
  std::vector<bool> used(t.height(), false);
  collect_levels(a, used);
  for (;;) {
    IV v = box(t, a);
    if (v.hi - v.lo <= eps) return {v.lo, v.hi};
    for (int k = 1; k <= t.height(); ++k)
      if (used[k - 1]) refine_level(t, k);
  }
}

int te_sign(const Tower& t, const TowerElem& a) {
  if (a.lvl == 0) return rat_sign(a.q);
  std::vector<bool> used(t.height(), false);
  collect_levels(a, used);
  for (;;) {
    IV v = box(t, a);
    if (v.lo > 0) return 1;
    if (v.hi < 0) return -1;
    for (int k = 1; k <= t.height(); ++k)
      if (used[k - 1]) refine_level(t, k);
  }
}

// ---------------------------------------------------------------------------
// tower growth

void Tower::extend(std::vector<TowerElem> minpoly, Rat re_lo, Rat re_hi,
                   Rat im_lo, Rat im_hi) {
  minpoly = ep_trim(std::move(minpoly));
  assert(minpoly.size() >= 3 && "tower level must have degree >= 2");
  assert(minpoly.back() == TowerElem(1) && "minimal polynomial must be monic");
  int new_total = total_degree() * (static_cast<int>(minpoly.size()) - 1);
  if (new_total > degree_cap)
    throw TowerCapError("degree-cap exceeded: " + std::to_string(new_total) +
                        " > " + std::to_string(degree_cap));
  TowerLevel L;
  L.minpoly = std::move(minpoly);
  L.re_lo = std::move(re_lo);
  L.re_hi = std::move(re_hi);
  L.im_lo = std::move(im_lo);
  L.im_hi = std::move(im_hi);
  L.real_certified = false;
  levels.push_back(std::move(L));
  // certify a real root if the region meets the real axis and the minimal
  // polynomial changes sign across [re_lo, re_hi]
  TowerLevel& top = levels.back();
  if (top.im_lo <= 0 && top.im_hi >= 0) {
    try {
      int s_lo = te_sign(*this, eval_minpoly(*this, height(), top.re_lo));
      int s_hi = te_sign(*this, eval_minpoly(*this, height(), top.re_hi));
      if (s_lo != 0 && s_hi != 0 && s_lo != s_hi) top.real_certified = true;
    } catch (const NotRealError&) {
      // coefficients live over a complex generator; leave uncertified
    }
  }
}

// ---------------------------------------------------------------------------
// JSON round trip

namespace {

using nlohmann::json;

// fully padded nested encoding of an element relative to a tower height
json elem_to_json(const Tower& t, const TowerElem& a, int height) {
  if (height == 0) {
    assert(a.lvl == 0);
    return rat_str(a.q);
  }
  EPoly cs = coords_at(a, height);
  int deg = t.level_degree(height);
  json arr = json::array();
  for (int k = 0; k < deg; ++k)
    arr.push_back(elem_to_json(
        t, k < static_cast<int>(cs.size()) ? cs[k] : TowerElem(), height - 1));
  return arr;
}

TowerElem elem_from_json(const json& j, int height) {
  if (height == 0) return te_rat(parse_rat(j.get<std::string>()));
  EPoly cs;
  for (const auto& e : j) cs.push_back(elem_from_json(e, height - 1));
  return te_make(height, std::move(cs));
}

}  // namespace

std::string te_to_json(const Tower& t, const TowerElem& a) {
  json j;
  j["tower"] = json::array();
  for (int k = 1; k <= t.height(); ++k) {
    const TowerLevel& L = t.levels[k - 1];
    json coeffs = json::array();
    for (const auto& c : L.minpoly) coeffs.push_back(elem_to_json(t, c, k - 1));
    json region = {rat_str(L.re_lo), rat_str(L.re_hi), rat_str(L.im_lo),
                   rat_str(L.im_hi)};
    j["tower"].push_back(json::array({coeffs, region}));
  }
  j["coords"] = elem_to_json(t, a, t.height());
  return j.dump();
}

std::pair<Tower, TowerElem> te_from_json(const std::string& s) {
  json j = json::parse(s);
  Tower t;
  int k = 0;
  for (const auto& lvl : j.at("tower")) {
    ++k;
    std::vector<TowerElem> mp;
    for (const auto& c : lvl.at(0)) mp.push_back(elem_from_json(c, k - 1));
    const auto& rg = lvl.at(1);
    t.extend(std::move(mp), parse_rat(rg.at(0).get<std::string>()),
             parse_rat(rg.at(1).get<std::string>()),
             parse_rat(rg.at(2).get<std::string>()),
             parse_rat(rg.at(3).get<std::string>()));
  }
  TowerElem a = elem_from_json(j.at("coords"), t.height());
  return {std::move(t), std::move(a)};
}

}  // namespace folmod
