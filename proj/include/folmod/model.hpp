#pragma once

#include "folmod/resolution.hpp"

namespace folmod {

// A0(F): Camacho-Sad indices at the origin on the diagonal, intersection
// numbers of the branches off it. Branch order is canonical (address
// lexicographic, as produced by resolve).
struct IndexMatrix {
  std::vector<std::string> branch_ids;
  std::vector<std::vector<TowerElem>> entries;
};

struct DivisorialModel {
  CDivisor divisor;  // branch id -> coefficient, first branch normalized to 1
  // exceptional coefficient ledger mu_E of the pull-back, in blow-up order
  std::vector<std::pair<std::string, TowerElem>> exceptional;
};

// Camacho-Sad index at a simple (or regular/simple root) node along an
// incident component: an exceptional id or the id of the branch whose leaf
// the node is. Throws std::invalid_argument (not-simple,
// component-not-incident).
TowerElem cs_index_simple(const ResolutionTree& tree, int node,
                          const std::string& along);

// CS_0(F, H): index at the trace leaf with respect to the strict branch plus
// the sum of nu_p^2 over the blown-up infinitely near points of the branch.
TowerElem cs_index_branch(const ResolutionTree& tree,
                          const std::string& branch_id);

// When equations are supplied, the off-diagonal entries are cross-checked
// against the resultant-based intersection multiplicity of the matched
// equations (hard error on disagreement).
IndexMatrix build_index_matrix(
    const ResolutionTree& tree,
    const std::vector<std::pair<std::string, BiPoly>>* equations = nullptr);

// mu_E for every blow-up when pulling back the branch divisor with the given
// coefficients, in blow-up order.
std::vector<std::pair<std::string, TowerElem>> model_pullback_ledger(
    const ResolutionTree& tree,
    const std::map<std::string, TowerElem>& branch_coeffs);

// Exact kernel vector of A0, normalized to lambda_1 = 1. Asserts rank s-1,
// det B0 != 0 and all entries nonzero; throws std::logic_error
// ("rank-anomaly") otherwise.
DivisorialModel divisorial_model_kernel(const ResolutionTree& tree,
                                        const IndexMatrix& A);

// Independent construction: propagates coefficient ratios across the corners
// of the dual graph and checks the per-blow-up coefficient law; same
// normalization as the kernel method.
DivisorialModel divisorial_model_propagation(const ResolutionTree& tree);

// Sum of the CS indices along an exceptional component at its creation
// time, recovered from the final tree: indices w.r.t. the component at the
// final leaves it meets, plus 1 for every later blow-up centred on it.
// Equals -1 on every non-dicritical blow-up of an accepted input.
TowerElem cs_exceptional_sum(const ResolutionTree& tree,
                             const std::string& exc_id);

// determinant of a square TowerElem matrix (fraction-free elimination)
TowerElem matrix_det(const Tower& t,
                     std::vector<std::vector<TowerElem>> entries);

struct VerifyReport {
  bool support_ok = true;
  bool indices_ok = true;
  std::vector<std::string> violated;  // branches with I_0(D,H) != CS_0(F,H)
  // divisor-level dicriticality of d along the resolution: a vanishing
  // exceptional pull-back coefficient or a nonnegative resonance among the
  // resolved coefficients
  bool divisor_dicritical = false;
  std::optional<ResonanceWitness> witness;
  bool pass() const { return support_ok && indices_ok && !divisor_dicritical; }
};

VerifyReport verify_model(const ResolutionTree& tree, const CDivisor& d);

// eta = sum lambda_i df_i/f_i with the model coefficients and the equations
// matched to the branches during resolution. Throws std::invalid_argument
// ("equation-branch-mismatch") when a branch has no matched equation.
LogPresentation logarithmic_model_form(
    const ResolutionTree& tree, const DivisorialModel& model,
    const std::vector<std::pair<std::string, BiPoly>>& equations);

}  // namespace folmod
