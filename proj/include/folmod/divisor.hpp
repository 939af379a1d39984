#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "folmod/bipoly.hpp"

namespace folmod {

// Finite formal sum of components with nonzero algebraic coefficients.
struct CDivisor {
  std::map<std::string, TowerElem> entries;
  std::map<std::string, BiPoly> equations;  // optional local equations

  void set(const std::string& id, TowerElem c) {
    if (c.is_zero())
      entries.erase(id);
    else
      entries[id] = std::move(c);
  }
};

// I_p(D, T) = -(sum_{i != T} lambda_i * (T, H_i)_p) / lambda_T.
// pairings maps component id -> intersection number with T at p.
TowerElem divisor_index(const Tower& t, const CDivisor& d, const std::string& T,
                        const std::map<std::string, int>& pairings);

bool projective_equiv(const Tower& t, const CDivisor& a, const CDivisor& b);

struct ResonanceWitness {
  std::vector<Int> m;  // nonnegative, not all zero, sum m_i lambda_i = 0
};

// Existence of a nonnegative resonance among the coefficients: expands over
// the Q-basis of the tower and decides the homogeneous system by exact basic
// feasible solution enumeration. All lambdas must be nonzero.
std::optional<ResonanceWitness> dicritical_decide(
    const Tower& t, const std::vector<TowerElem>& lambdas);

struct DescentStep {
  size_t i, j;          // pair blown up (indices into the coefficient list)
  TowerElem new_coeff;  // the new exceptional coefficient lambda_i + lambda_j
  Int t_inv;            // sum of the witness entries after the step
  Int delta;            // minimal positive pair sum after the step
};

struct DescentResult {
  std::vector<DescentStep> steps;
  bool reached_zero;  // a combined coefficient became exactly 0
};

// Replays the corner blow-up descent on a witnessed resonance until a
// combined coefficient vanishes; the (t, delta) ledger strictly decreases
// lexicographically. Throws std::invalid_argument on an invalid witness.
DescentResult resonance_descent(const Tower& t, std::vector<TowerElem> lambdas,
                                std::vector<Int> m);

// Conservation checks for the index under one blow-up.
// sum of I_{p'}(D',T') over the points of T' on E == I_p(D,T) - nu_T^2
bool index_blowup_check(const Tower& t, const TowerElem& index_before,
                        const std::vector<TowerElem>& indices_after, int nu_T);

struct PullbackResult {
  CDivisor divisor;
  TowerElem mu;     // exceptional coefficient = sum nu_i * lambda_i
  bool dicritical;  // mu == 0
};

// Pull-back of a divisor under the blow-up of a point: keeps every strict
// component with its coefficient and adds exc_id with mu (omitted if 0).
PullbackResult pullback_divisor(const Tower& t, const CDivisor& d,
                                const std::map<std::string, int>& mult,
                                const std::string& exc_id);

}  // namespace folmod
