#include "folmod/divisor.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace folmod {

TowerElem divisor_index(const Tower& t, const CDivisor& d, const std::string& T,
                        const std::map<std::string, int>& pairings) {
  auto it = d.entries.find(T);
  if (it == d.entries.end() || it->second.is_zero())
    throw std::invalid_argument("component-not-in-support: " + T);
  TowerElem sum;
  for (const auto& [id, lam] : d.entries) {
    if (id == T) continue;
    auto p = pairings.find(id);
    int n = p == pairings.end() ? 0 : p->second;
    if (n != 0) sum = te_add(sum, te_scale_rat(lam, Rat(n)));
  }
  return te_neg(te_div(t, sum, it->second));
}

bool projective_equiv(const Tower& t, const CDivisor& a, const CDivisor& b) {
  if (a.entries.size() != b.entries.size()) return false;
  TowerElem ratio;
  bool have = false;
  for (const auto& [id, ca] : a.entries) {
    auto it = b.entries.find(id);
    if (it == b.entries.end()) return false;
    TowerElem r = te_div(t, ca, it->second);
    if (!have) {
      ratio = r;
      have = true;
    } else if (!(r == ratio)) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// nonnegative resonance decision

namespace {

// Solves M x = rhs exactly for the submatrix of the given columns; returns
// the unique solution if the columns are independent and the system is
// consistent, nullopt otherwise.
std::optional<std::vector<Rat>> solve_columns(
    const std::vector<std::vector<Rat>>& M, const std::vector<Rat>& rhs,
    const std::vector<size_t>& cols) {
  size_t rows = M.size(), n = cols.size();
  std::vector<std::vector<Rat>> A(rows, std::vector<Rat>(n + 1));
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < n; ++c) A[r][c] = M[r][cols[c]];
    A[r][n] = rhs[r];
  }
  size_t rank = 0;
  std::vector<size_t> pivot_col(rows);
  for (size_t c = 0; c < n && rank < rows; ++c) {
    size_t piv = rank;
    while (piv < rows && A[piv][c] == 0) ++piv;
    if (piv == rows) return std::nullopt;  // dependent columns
    std::swap(A[piv], A[rank]);
    Rat inv = Rat(1) / A[rank][c];
    for (auto& v : A[rank]) v *= inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || A[r][c] == 0) continue;
      Rat f = A[r][c];
      for (size_t k = c; k <= n; ++k) A[r][k] -= f * A[rank][k];
    }
    pivot_col[rank] = c;
    ++rank;
  }
  if (rank < n) return std::nullopt;
  // consistency of remaining rows
  for (size_t r = rank; r < rows; ++r)
    if (A[r][n] != 0) return std::nullopt;
  std::vector<Rat> x(n);
  for (size_t r = 0; r < rank; ++r) x[pivot_col[r]] = A[r][n];
  return x;
}

}  // namespace

std::optional<ResonanceWitness> dicritical_decide(
    const Tower& t, const std::vector<TowerElem>& lambdas) {
  size_t s = lambdas.size();
  for (const auto& l : lambdas)
    if (l.is_zero()) throw std::invalid_argument("zero-coefficient input");
  // rows: Q-basis components of sum m_i lambda_i = 0, plus normalization
  // sum m_i = 1 (scale invariance)
  size_t dim = t.total_degree();
  std::vector<std::vector<Rat>> M(dim + 1, std::vector<Rat>(s, Rat(0)));
  for (size_t i = 0; i < s; ++i) {
    std::vector<Rat> q = te_qcoords(t, lambdas[i]);
    for (size_t r = 0; r < dim; ++r) M[r][i] = q[r];
    M[dim][i] = 1;
  }
  std::vector<Rat> rhs(dim + 1, Rat(0));
  rhs[dim] = 1;
  // enumerate support subsets; a feasible system has a basic feasible
  // solution with independent support columns
  for (size_t mask = 1; mask < (size_t{1} << s); ++mask) {
    std::vector<size_t> cols;
    for (size_t i = 0; i < s; ++i)
      if (mask & (size_t{1} << i)) cols.push_back(i);
    auto x = solve_columns(M, rhs, cols);
    if (!x) continue;
    bool nonneg = true;
    for (const auto& v : *x)
      if (v < 0) nonneg = false;
    if (!nonneg) continue;
    // clear denominators to an integer witness
    Int lcm(1);
    for (const auto& v : *x) {
      Int den = rat_den(v);
      lcm = lcm / gcd(lcm, den) * den;
    }
    ResonanceWitness w;
    w.m.assign(s, Int(0));
    for (size_t c = 0; c < cols.size(); ++c)
      w.m[cols[c]] = Int((*x)[c] * Rat(lcm));
    Int g(0);
    for (const auto& v : w.m) g = gcd(g, v);
    if (g > 1)
      for (auto& v : w.m) v /= g;
    return w;
  }
  return std::nullopt;
}

DescentResult resonance_descent(const Tower& t, std::vector<TowerElem> lambdas,
                                std::vector<Int> m) {
  if (m.size() != lambdas.size()) throw std::invalid_argument("invalid-witness");
  TowerElem acc;
  bool any = false;
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i] < 0) throw std::invalid_argument("invalid-witness");
    if (m[i] > 0) any = true;
    acc = te_add(acc, te_scale_rat(lambdas[i], Rat(m[i])));
  }
  if (!any || !acc.is_zero()) throw std::invalid_argument("invalid-witness");

  DescentResult out{{}, false};
  Int prev_t(-1), prev_delta(-1);
  for (;;) {
    // pick i < j with m_i, m_j > 0 minimizing m_i + m_j (smallest index tie)
    size_t bi = 0, bj = 0;
    Int best(-1);
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] <= 0) continue;
      for (size_t j = i + 1; j < m.size(); ++j) {
        if (m[j] <= 0) continue;
        Int ssum = m[i] + m[j];
        if (best < 0 || ssum < best) {
          best = ssum;
          bi = i;
          bj = j;
        }
      }
    }
    assert(best >= 0 && "descent ran out of positive pairs");
    // order so that m_bi <= m_bj
    if (m[bi] > m[bj]) std::swap(bi, bj);
    TowerElem exc = te_add(lambdas[bi], lambdas[bj]);
    // witness transform: the new exceptional component absorbs m_bi
    Int absorbed = m[bi];
    lambdas.push_back(exc);
    m.push_back(absorbed);
    m[bj] -= absorbed;
    m[bi] = 0;
    Int t_inv(0);
    for (const auto& v : m) t_inv += v;
    Int delta(-1);
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] <= 0) continue;
      for (size_t j = i + 1; j < m.size(); ++j)
        if (m[j] > 0 && (delta < 0 || m[i] + m[j] < delta)) delta = m[i] + m[j];
    }
    DescentStep step{bi, bj, exc, t_inv, delta};
    out.steps.push_back(step);
    if (exc.is_zero()) {
      out.reached_zero = true;
      return out;
    }
    // ledger strictly decreases lexicographically
    if (prev_t >= 0)
      assert(t_inv < prev_t || (t_inv == prev_t && delta < prev_delta));
    prev_t = t_inv;
    prev_delta = delta;
  }
}

bool index_blowup_check(const Tower& t, const TowerElem& index_before,
                        const std::vector<TowerElem>& indices_after,
                        int nu_T) {
  TowerElem sum;
  for (const auto& v : indices_after) sum = te_add(sum, v);
  TowerElem expect =
      te_sub(index_before, te_rat(Rat(Int(nu_T) * Int(nu_T))));
  (void)t;
  return sum == expect;
}

PullbackResult pullback_divisor(const Tower& t, const CDivisor& d,
                                const std::map<std::string, int>& mult,
                                const std::string& exc_id) {
  PullbackResult out;
  out.divisor = d;
  TowerElem mu;
  for (const auto& [id, lam] : d.entries) {
    auto it = mult.find(id);
    int nu = it == mult.end() ? 0 : it->second;
    if (nu != 0) mu = te_add(mu, te_scale_rat(lam, Rat(nu)));
  }
  out.mu = mu;
  out.dicritical = mu.is_zero();
  out.divisor.set(exc_id, mu);
  (void)t;
  return out;
}

}  // namespace folmod
