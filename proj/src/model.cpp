#include "folmod/model.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <stdexcept>

namespace folmod {

namespace {

TowerElem bp_coeff(const BiPoly& p, int i, int j) {
  auto it = p.terms.find({i, j});
  return it == p.terms.end() ? TowerElem() : it->second;
}

const Branch& find_branch(const ResolutionTree& tree, const std::string& id) {
  for (const auto& b : tree.branches)
    if (b.id == id) return b;
  throw std::invalid_argument("unknown-branch: " + id);
}

bool unblown_root(const ResolutionTree& tree) {
  return tree.nodes.size() == 1;
}

}  // namespace

TowerElem cs_index_simple(const ResolutionTree& tree, int node,
                          const std::string& along) {
  const Tower& t = tree.tower;
  const ResolutionNode& n = tree.nodes.at(node);
  if (unblown_root(tree) && node == 0) {
    for (const auto& b : tree.branches)
      if (b.id == along && b.root_cs) return *b.root_cs;
    throw std::invalid_argument("component-not-incident: " + along);
  }
  if (n.cls != NodeClass::simple_trace && n.cls != NodeClass::simple_corner)
    throw std::invalid_argument("not-simple");
  if (n.exc_x && *n.exc_x == along) return cs_axis(t, n.form, true);
  if (n.exc_y && *n.exc_y == along) return cs_axis(t, n.form, false);
  for (const auto& b : tree.branches)
    if (b.id == along && b.leaf == node)
      return te_inv(t, cs_axis(t, n.form, n.exc_x.has_value()));
  throw std::invalid_argument("component-not-incident: " + along);
}

TowerElem cs_index_branch(const ResolutionTree& tree,
                          const std::string& branch_id) {
  const Branch& b = find_branch(tree, branch_id);
  TowerElem cs = cs_index_simple(tree, b.leaf, branch_id);
  // infinitely near points of the branch: every blown-up node on its path
  Rat add(0);
  for (size_t i = 0; i + 1 < b.nu.size(); ++i) {
    Rat v(b.nu[i].second);
    add += v * v;
  }
  return te_add(cs, te_rat(add));
}

IndexMatrix build_index_matrix(
    const ResolutionTree& tree,
    const std::vector<std::pair<std::string, BiPoly>>* equations) {
  if (tree.branches.empty())
    throw std::invalid_argument("no branches");
  IndexMatrix A;
  size_t s = tree.branches.size();
  A.entries.assign(s, std::vector<TowerElem>(s));
  for (size_t i = 0; i < s; ++i) {
    A.branch_ids.push_back(tree.branches[i].id);
    A.entries[i][i] = cs_index_branch(tree, tree.branches[i].id);
    for (size_t j = i + 1; j < s; ++j) {
      int p = branch_pairing(tree, tree.branches[i], tree.branches[j]);
      A.entries[i][j] = A.entries[j][i] = te_rat(Rat(p));
      if (equations) {
        // independent check against the resultant-based multiplicity
        const BiPoly *fi = nullptr, *fj = nullptr;
        for (const auto& [label, q] : *equations) {
          if (tree.branches[i].matched_label == label) fi = &q;
          if (tree.branches[j].matched_label == label) fj = &q;
        }
        if (fi && fj && fi != fj) {
          auto m = bp_intersection_multiplicity(tree.tower, *fi, *fj);
          if (!m || *m != p)
            throw std::logic_error("intersection-multiplicity mismatch");
        }
      }
    }
  }
  return A;
}

std::vector<std::pair<std::string, TowerElem>> model_pullback_ledger(
    const ResolutionTree& tree,
    const std::map<std::string, TowerElem>& branch_coeffs) {
  const Tower& t = tree.tower;
  std::vector<std::pair<std::string, TowerElem>> ledger;
  std::map<std::string, TowerElem> exc_coeff;
  for (const auto& rec : tree.blowups) {
    int p = rec.node;
    TowerElem mu;
    for (const auto& b : tree.branches) {
      auto it = branch_coeffs.find(b.id);
      if (it == branch_coeffs.end()) continue;
      for (const auto& [n, v] : b.nu)
        if (n == p && v != 0)
          mu = te_add(mu, te_scale_rat(it->second, Rat(v)));
    }
    const ResolutionNode& node = tree.nodes[p];
    for (const auto& e : {node.exc_x, node.exc_y}) {
      if (!e) continue;
      auto it = exc_coeff.find(*e);
      if (it != exc_coeff.end()) mu = te_add(mu, it->second);
    }
    (void)t;
    exc_coeff[rec.exc] = mu;
    ledger.emplace_back(rec.exc, mu);
  }
  return ledger;
}

DivisorialModel divisorial_model_kernel(const ResolutionTree& tree,
                                        const IndexMatrix& A) {
  const Tower& t = tree.tower;
  size_t s = A.branch_ids.size();
  // row-reduce a copy of A0 to find its kernel
  std::vector<std::vector<TowerElem>> M = A.entries;
  std::vector<int> pivot_of_col(s, -1);
  size_t rank = 0;
  for (size_t c = 0; c < s && rank < s; ++c) {
    size_t piv = rank;
    while (piv < s && M[piv][c].is_zero()) ++piv;
    if (piv == s) continue;
    std::swap(M[piv], M[rank]);
    TowerElem inv = te_inv(t, M[rank][c]);
    for (size_t k = 0; k < s; ++k) M[rank][k] = te_mul(t, M[rank][k], inv);
    for (size_t r = 0; r < s; ++r) {
      if (r == rank || M[r][c].is_zero()) continue;
      TowerElem f = M[r][c];
      for (size_t k = 0; k < s; ++k)
        M[r][k] = te_sub(M[r][k], te_mul(t, f, M[rank][k]));
    }
    pivot_of_col[c] = static_cast<int>(rank);
    ++rank;
  }
  if (rank != s - 1) throw std::logic_error("rank-anomaly");
  // det B0 (A0 without the first row and column) must be nonzero: B0
  // nonsingular is equivalent to the kernel vector having a nonzero first
  // coordinate, checked below together with the other entries
  size_t free_col = 0;
  while (free_col < s && pivot_of_col[free_col] != -1) ++free_col;
  std::vector<TowerElem> lam(s);
  lam[free_col] = te_rat(Rat(1));
  for (size_t c = 0; c < s; ++c) {
    int r = pivot_of_col[c];
    if (r >= 0) lam[c] = te_neg(M[r][free_col]);
  }
  for (const auto& v : lam)
    if (v.is_zero()) throw std::logic_error("rank-anomaly");
  // normalize the first branch to 1
  TowerElem inv0 = te_inv(t, lam[0]);
  DivisorialModel out;
  std::map<std::string, TowerElem> coeffs;
  for (size_t i = 0; i < s; ++i) {
    TowerElem v = te_mul(t, lam[i], inv0);
    out.divisor.set(A.branch_ids[i], v);
    coeffs[A.branch_ids[i]] = v;
  }
  out.exceptional = model_pullback_ledger(tree, coeffs);
  return out;
}

DivisorialModel divisorial_model_propagation(const ResolutionTree& tree) {
  const Tower& t = tree.tower;
  if (tree.branches.empty())
    throw std::invalid_argument("no branches");
  // edges of the dual graph with the coefficient ratio c_u / c_v = lam / mu
  struct Edge {
    std::string u, v;
    TowerElem lam, mu;
  };
  std::vector<Edge> edges;
  std::map<int, std::string> leaf_branch;
  for (const auto& b : tree.branches) leaf_branch[b.leaf] = b.id;
  if (unblown_root(tree)) {
    if (tree.branches.size() == 2) {
      // c_{B2} = -CS(B1) * c_{B1}
      edges.push_back({tree.branches[0].id, tree.branches[1].id,
                       te_rat(Rat(1)), te_neg(*tree.branches[0].root_cs)});
    }
  } else {
    for (const auto& n : tree.nodes) {
      if (n.cls == NodeClass::simple_corner) {
        TowerElem lam = bp_coeff(n.form.a, 0, 1);  // x-role coefficient
        TowerElem mu = bp_coeff(n.form.b, 1, 0);   // y-role coefficient
        edges.push_back({*n.exc_x, *n.exc_y, lam, mu});
      } else if (n.cls == NodeClass::simple_trace) {
        auto it = leaf_branch.find(n.index);
        if (it == leaf_branch.end()) continue;
        TowerElem lam = bp_coeff(n.form.a, 0, 1);
        TowerElem mu = bp_coeff(n.form.b, 1, 0);
        if (n.exc_x)
          edges.push_back({*n.exc_x, it->second, lam, mu});
        else
          edges.push_back({it->second, *n.exc_y, lam, mu});
      }
    }
  }
  // propagate from the first branch over the (connected, tree-shaped) graph
  std::map<std::string, TowerElem> coeff;
  coeff[tree.branches[0].id] = te_rat(Rat(1));
  std::deque<std::string> queue{tree.branches[0].id};
  while (!queue.empty()) {
    std::string cur = queue.front();
    queue.pop_front();
    for (const auto& e : edges) {
      if (e.u == cur && !coeff.count(e.v)) {
        coeff[e.v] = te_div(t, te_mul(t, coeff[cur], e.mu), e.lam);
        queue.push_back(e.v);
      } else if (e.v == cur && !coeff.count(e.u)) {
        coeff[e.u] = te_div(t, te_mul(t, coeff[cur], e.lam), e.mu);
        queue.push_back(e.u);
      }
    }
  }
  DivisorialModel out;
  std::map<std::string, TowerElem> branch_coeffs;
  for (const auto& b : tree.branches) {
    auto it = coeff.find(b.id);
    if (it == coeff.end()) throw std::logic_error("corner-inconsistency");
    out.divisor.set(b.id, it->second);
    branch_coeffs[b.id] = it->second;
  }
  out.exceptional = model_pullback_ledger(tree, branch_coeffs);
  // the propagated exceptional coefficients must satisfy the blow-up law
  for (const auto& [id, mu] : out.exceptional) {
    auto it = coeff.find(id);
    if (it == coeff.end() || !(it->second == mu))
      throw std::logic_error("corner-inconsistency");
  }
  return out;
}

TowerElem cs_exceptional_sum(const ResolutionTree& tree,
                             const std::string& exc_id) {
  const Tower& t = tree.tower;
  TowerElem sum;
  for (const auto& n : tree.nodes) {
    bool on_x = n.exc_x && *n.exc_x == exc_id;
    bool on_y = n.exc_y && *n.exc_y == exc_id;
    if (!on_x && !on_y) continue;
    if (n.cls == NodeClass::simple_trace || n.cls == NodeClass::simple_corner)
      sum = te_add(sum, cs_axis(t, n.form, on_x));
    else if (!n.created_exc.empty())
      // a later blow-up on the component lowered the index sum by 1
      sum = te_add(sum, te_rat(Rat(1)));
  }
  return sum;
}

TowerElem matrix_det(const Tower& t,
                     std::vector<std::vector<TowerElem>> M) {
  size_t n = M.size();
  TowerElem det = te_rat(Rat(1));
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && M[piv][c].is_zero()) ++piv;
    if (piv == n) return TowerElem();
    if (piv != c) {
      std::swap(M[piv], M[c]);
      det = te_neg(det);
    }
    det = te_mul(t, det, M[c][c]);
    TowerElem inv = te_inv(t, M[c][c]);
    for (size_t r = c + 1; r < n; ++r) {
      if (M[r][c].is_zero()) continue;
      TowerElem f = te_mul(t, M[r][c], inv);
      for (size_t k = c; k < n; ++k)
        M[r][k] = te_sub(M[r][k], te_mul(t, f, M[c][k]));
    }
  }
  return det;
}

VerifyReport verify_model(const ResolutionTree& tree, const CDivisor& d) {
  const Tower& t = tree.tower;
  VerifyReport rep;
  // support equality with the branch set
  std::map<std::string, TowerElem> coeffs;
  for (const auto& [id, v] : d.entries) {
    bool known = false;
    for (const auto& b : tree.branches) known |= b.id == id;
    if (!known) rep.support_ok = false;
    coeffs[id] = v;
  }
  for (const auto& b : tree.branches)
    if (!coeffs.count(b.id)) rep.support_ok = false;
  if (!rep.support_ok) return rep;

  // I_0(D, H_i) = CS_0(F, H_i) for every branch
  for (const auto& bi : tree.branches) {
    TowerElem sum;
    for (const auto& bj : tree.branches) {
      if (bj.id == bi.id) continue;
      int p = branch_pairing(tree, bi, bj);
      if (p != 0) sum = te_add(sum, te_scale_rat(coeffs[bj.id], Rat(p)));
    }
    TowerElem index = te_neg(te_div(t, sum, coeffs[bi.id]));
    if (!(index == cs_index_branch(tree, bi.id))) {
      rep.indices_ok = false;
      rep.violated.push_back(bi.id);
    }
  }

  // divisor-level dicriticality along the resolution
  std::vector<TowerElem> resolved;
  for (const auto& b : tree.branches) resolved.push_back(coeffs[b.id]);
  for (const auto& [id, mu] : model_pullback_ledger(tree, coeffs)) {
    if (mu.is_zero()) {
      rep.divisor_dicritical = true;
      return rep;
    }
    resolved.push_back(mu);
  }
  rep.witness = dicritical_decide(t, resolved);
  rep.divisor_dicritical = rep.witness.has_value();
  return rep;
}

LogPresentation logarithmic_model_form(
    const ResolutionTree& tree, const DivisorialModel& model,
    const std::vector<std::pair<std::string, BiPoly>>& equations) {
  LogPresentation lp;
  for (const auto& b : tree.branches) {
    if (!b.matched_label)
      throw std::invalid_argument("equation-branch-mismatch: " + b.id);
    const BiPoly* f = nullptr;
    for (const auto& [label, q] : equations)
      if (label == *b.matched_label) f = &q;
    if (!f) throw std::invalid_argument("equation-branch-mismatch: " + b.id);
    auto it = model.divisor.entries.find(b.id);
    if (it == model.divisor.entries.end())
      throw std::invalid_argument("equation-branch-mismatch: " + b.id);
    lp.pairs.emplace_back(it->second, *f);
  }
  return lp;
}

}  // namespace folmod
