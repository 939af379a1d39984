#include "folmod/resolution.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>
#include <stdexcept>

namespace folmod {

namespace {

TowerElem bp_coeff(const BiPoly& p, int i, int j) {
  auto it = p.terms.find({i, j});
  return it == p.terms.end() ? TowerElem() : it->second;
}

bool vanishes0(const BiPoly& p) { return bp_coeff(p, 0, 0).is_zero(); }

bool axis_divides(const BiPoly& p, bool axis_is_x) {
  // x | p resp. y | p
  for (const auto& [e, c] : p.terms)
    if ((axis_is_x ? e.first : e.second) == 0) return false;
  return true;
}

// matrix of the linear part of the dual field X = b dx - a dy
struct LinearPart {
  TowerElem m11, m12, m21, m22;
  TowerElem trace, det;
};

LinearPart linear_part(const Tower& t, const OneForm& w) {
  LinearPart lp;
  lp.m11 = bp_coeff(w.b, 1, 0);
  lp.m12 = bp_coeff(w.b, 0, 1);
  lp.m21 = te_neg(bp_coeff(w.a, 1, 0));
  lp.m22 = te_neg(bp_coeff(w.a, 0, 1));
  lp.trace = te_add(lp.m11, lp.m22);
  lp.det = te_sub(te_mul(t, lp.m11, lp.m22), te_mul(t, lp.m12, lp.m21));
  return lp;
}

// a kernel direction of M - e (e an eigenvalue)
std::pair<TowerElem, TowerElem> eigvec(const LinearPart& m, const TowerElem& e) {
  if (!m.m12.is_zero() || !te_sub(m.m11, e).is_zero())
    return {m.m12, te_sub(e, m.m11)};
  return {te_sub(e, m.m22), m.m21};
}

bool te_lt(const Tower& t, const TowerElem& a, const TowerElem& b) {
  return te_qcoords(t, a) < te_qcoords(t, b);
}

struct WorkItem {
  int parent;
  NodeAddress addr;
  OneForm form;
  std::optional<std::string> ex, ey;
  std::vector<std::pair<std::string, BiPoly>> marked;
  int depth;
};

// strict transforms of the marked equations that pass through the point
// (first chart: shift to the root position c; second chart: origin)
std::vector<std::pair<std::string, BiPoly>> push_marked(
    const Tower& t, const std::vector<std::pair<std::string, BiPoly>>& marked,
    ChartId chart, const TowerElem& c) {
  std::vector<std::pair<std::string, BiPoly>> out;
  for (const auto& [label, q] : marked) {
    BiPoly s = transform_poly(t, q, chart).strict_poly;
    if (chart == ChartId::first && !c.is_zero()) s = bp_shift(t, s, TowerElem(), c);
    if (bp_deg_x(s) + bp_deg_y(s) > 0 && vanishes0(s)) out.emplace_back(label, s);
  }
  return out;
}

}  // namespace

std::pair<Tower, std::vector<TowerElem>> all_roots(Tower t, const UPoly& g) {
  std::vector<TowerElem> roots;
  std::vector<UPoly> work;
  for (auto& [f, m] : up_factor(t, g)) work.push_back(f);
  while (!work.empty()) {
    UPoly f = work.back();
    work.pop_back();
    if (up_deg(f) < 1) continue;
    if (up_deg(f) == 1) {
      roots.push_back(te_neg(f[0]));  // monic
      continue;
    }
    AdjoinResult ar = adjoin_any_root(t, f);
    t = ar.tower;
    roots.push_back(ar.root);
    UPoly lin{te_neg(ar.root), te_rat(Rat(1))};
    auto [q, r] = up_divmod(t, f, lin);
    assert(r.empty());
    for (auto& [f2, m2] : up_factor(t, q)) work.push_back(f2);
  }
  std::sort(roots.begin(), roots.end(),
            [&](const TowerElem& a, const TowerElem& b) { return te_lt(t, a, b); });
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return {std::move(t), std::move(roots)};
}

std::pair<Tower, std::vector<TowerElem>> singular_points_on_divisor(
    Tower t, const OneForm& w) {
  UPoly g = up_gcd(t, bp_at_x0(w.a), bp_at_x0(w.b));
  if (up_deg(g) < 1) return {std::move(t), {}};
  return all_roots(std::move(t), g);
}

TowerElem cs_axis(const Tower& t, const OneForm& w, bool axis_is_x) {
  LinearPart m = linear_part(t, w);
  // tangent eigenvalue is the diagonal entry of the axis direction
  if (axis_is_x) return te_div(t, m.m11, m.m22);
  return te_div(t, m.m22, m.m11);
}

int log_order(const Tower& t, const OneForm& w, bool axis_x, bool axis_y) {
  if (w.a.is_zero() && w.b.is_zero())
    throw std::domain_error("zero 1-form");
  BiPoly A = w.a, B = w.b;
  if (axis_y) {  // y = 0 invariant: y | a
    if (!A.is_zero() && !axis_divides(A, false))
      throw std::domain_error("axis y=0 not invariant");
    if (!A.is_zero()) A = bp_div_monomial(A, 0, 1);
  }
  if (axis_x) {  // x = 0 invariant: x | b
    if (!B.is_zero() && !axis_divides(B, true))
      throw std::domain_error("axis x=0 not invariant");
    if (!B.is_zero()) B = bp_div_monomial(B, 1, 0);
  }
  (void)t;
  int o = 1 << 29;
  if (!A.is_zero()) o = std::min(o, bp_order(A));
  if (!B.is_zero()) o = std::min(o, bp_order(B));
  return o;
}

// ---------------------------------------------------------------------------

namespace {

// branches of a root germ that is already simple or regular
void root_branches(ResolutionTree& tree) {
  Tower& t = tree.tower;
  const ResolutionNode& root = tree.nodes.front();
  const OneForm& w = root.form;
  std::vector<Branch> bs;
  auto add = [&](const std::string& axis, TowerElem dx, TowerElem dy,
                 std::optional<TowerElem> cs) {
    Branch b;
    b.leaf = 0;
    b.root_axis = axis;
    b.nu = {{0, 1}};
    b.dir_x = std::move(dx);
    b.dir_y = std::move(dy);
    b.root_cs = std::move(cs);
    bs.push_back(std::move(b));
  };
  if (root.cls == NodeClass::regular) {
    TowerElem a0 = bp_coeff(w.a, 0, 0), b0 = bp_coeff(w.b, 0, 0);
    add("leaf", b0, te_neg(a0), TowerElem(0));
  } else {
    LinearPart m = linear_part(t, w);
    bool inv_x = w.b.is_zero() || axis_divides(w.b, true);
    bool inv_y = w.a.is_zero() || axis_divides(w.a, false);
    if (inv_x) add("x=0", TowerElem(), TowerElem(1), te_div(t, m.m11, m.m22));
    if (inv_y) add("y=0", TowerElem(1), TowerElem(), te_div(t, m.m22, m.m11));
    if (inv_x != inv_y) {
      // the second separatrix is the other eigendirection
      TowerElem e = inv_x ? m.m11 : m.m22;      // transverse eigenvalue of axis
      TowerElem cs = inv_x ? te_div(t, m.m22, m.m11) : te_div(t, m.m11, m.m22);
      auto v = eigvec(m, e);
      add("dir", v.first, v.second, cs);
    } else if (!inv_x && !inv_y) {
      // neither axis invariant: eigenvalues may live in an extension
      UPoly chi{m.det, te_neg(m.trace), te_rat(Rat(1))};
      TowerElem e1;
      bool found = false;
      for (auto& [f, mult] : up_factor(t, chi)) {
        if (up_deg(f) == 1) {
          e1 = te_neg(f[0]);
          found = true;
          break;
        }
      }
      if (!found) {
        AdjoinResult ar = adjoin_any_root(t, chi);
        t = ar.tower;
        e1 = ar.root;
      }
      TowerElem e2 = te_sub(m.trace, e1);
      auto v1 = eigvec(m, e1);
      auto v2 = eigvec(m, e2);
      add("dir", v1.first, v1.second, te_div(t, e2, e1));
      add("dir", v2.first, v2.second, te_div(t, e1, e2));
    }
  }
  for (size_t i = 0; i < bs.size(); ++i) bs[i].id = "B" + std::to_string(i + 1);
  tree.branches = std::move(bs);
}

// tangent direction of the non-exceptional separatrix at a trace leaf
std::pair<TowerElem, TowerElem> trace_leaf_direction(const Tower& t,
                                                     const ResolutionNode& n) {
  LinearPart m = linear_part(t, n.form);
  bool e_is_x = n.exc_x.has_value();
  TowerElem e_trans = e_is_x ? m.m11 : m.m22;
  return eigvec(m, e_trans);
}

void match_equations(const Tower& t, ResolutionTree& tree) {
  for (auto& b : tree.branches) {
    const ResolutionNode& leaf = tree.nodes[b.leaf];
    for (const auto& [label, q] : leaf.marked) {
      TowerElem lx = bp_coeff(q, 1, 0), ly = bp_coeff(q, 0, 1);
      if (lx.is_zero() && ly.is_zero()) continue;  // strict not smooth here
      TowerElem pairing =
          te_add(te_mul(t, lx, b.dir_x), te_mul(t, ly, b.dir_y));
      if (pairing.is_zero()) {
        b.matched_label = label;
        break;
      }
    }
  }
}

void compute_nu(ResolutionTree& tree, Branch& b) {
  std::vector<int> path;
  for (int n = b.leaf; n != -1; n = tree.nodes[n].parent) path.push_back(n);
  std::reverse(path.begin(), path.end());
  std::vector<int> nu(path.size(), 0);
  nu.back() = 1;
  auto incident = [&](int node, const std::string& exc) {
    const ResolutionNode& q = tree.nodes[node];
    return (q.exc_x && *q.exc_x == exc) || (q.exc_y && *q.exc_y == exc);
  };
  for (int p = static_cast<int>(path.size()) - 2; p >= 0; --p) {
    const std::string& exc = tree.nodes[path[p]].created_exc;
    assert(!exc.empty());
    int s = 0;
    for (size_t q = p + 1; q < path.size(); ++q)
      if (incident(path[q], exc)) s += nu[q];
    nu[p] = s;
  }
  b.nu.clear();
  for (size_t i = 0; i < path.size(); ++i) b.nu.emplace_back(path[i], nu[i]);
}

}  // namespace

ResolutionTree resolve(Tower t, OneForm w, const ResolveOptions& opt) {
  t.degree_cap = opt.tower_cap;
  if (w.a.is_zero() && w.b.is_zero())
    throw std::invalid_argument("zero 1-form");
  if (!w.reduced) w = strip_common_factor(t, w).first;

  ResolutionTree tree;
  std::vector<WorkItem> stack;
  WorkItem root;
  root.parent = -1;
  root.form = w;
  root.depth = 0;
  for (const auto& [label, q] : opt.equations)
    if (!q.is_zero() && vanishes0(q)) root.marked.emplace_back(label, q);
  stack.push_back(std::move(root));

  bool rejected = false;
  while (!stack.empty() && !rejected) {
    WorkItem it = stack.back();
    stack.pop_back();
    int idx = static_cast<int>(tree.nodes.size());
    ResolutionNode n;
    n.index = idx;
    n.parent = it.parent;
    n.address = it.addr;
    n.form = it.form;
    n.form.reduced = true;
    n.exc_x = it.ex;
    n.exc_y = it.ey;
    n.marked = it.marked;
    n.depth = it.depth;

    if (!vanishes0(it.form.a) || !vanishes0(it.form.b)) {
      assert(it.parent == -1 && "regular point reached below the root");
      n.cls = NodeClass::regular;
      tree.nodes.push_back(std::move(n));
      continue;
    }
    LinearPart lp = linear_part(t, it.form);
    n.trace = lp.trace;
    n.det = lp.det;
    EigenRatio er = eigen_ratio_class(t, lp.trace, lp.det);
    switch (er.kind) {
      case RatioKind::both_zero:
        n.cls = NodeClass::to_blow_up;
        break;
      case RatioKind::one_zero:
        n.cls = NodeClass::saddle_node;
        break;
      case RatioKind::pos_rational:
        n.cls = NodeClass::resonant_presimple;
        break;
      default:
        n.cls = (it.ex && it.ey) ? NodeClass::simple_corner
                                 : NodeClass::simple_trace;
    }
    tree.nodes.push_back(n);
    if (n.cls == NodeClass::saddle_node) {
      tree.reject = RejectReason::saddle_node;
      tree.reject_node = idx;
      rejected = true;
      continue;
    }
    if (n.cls == NodeClass::resonant_presimple) {
      // one exploratory blow-up distinguishes a dicritical point from a
      // genuine resonance
      TransformResult ex = transform_form(t, it.form, ChartId::first);
      tree.reject = ex.dicritical ? RejectReason::dicritical
                                  : RejectReason::resonant_presimple;
      tree.reject_node = idx;
      rejected = true;
      continue;
    }
    if (n.cls != NodeClass::to_blow_up) continue;

    if (it.depth >= opt.max_depth)
      throw DepthCapError("blow-up depth cap exceeded");

    TransformResult tr1 = transform_form(t, it.form, ChartId::first);
    if (!tr1.consistent)
      throw std::logic_error("strict transform of a reduced form not reduced");
    if (tr1.dicritical) {
      tree.reject = RejectReason::dicritical;
      tree.reject_node = idx;
      rejected = true;
      continue;
    }
    std::string exc = "E" + std::to_string(tree.exc_ids.size() + 1);
    tree.exc_ids.push_back(exc);
    tree.blowup_order.push_back(idx);
    tree.blowups.push_back(
        {idx, exc, tr1.exceptional_order, form_order(it.form)});
    tree.nodes[idx].created_exc = exc;

    // second chart: only the point y' = infinity of the first
    TransformResult tr2 = transform_form(t, it.form, ChartId::second);
    if (!tr2.consistent)
      throw std::logic_error("strict transform of a reduced form not reduced");
    const OneForm& w2 = tr2.strict_form;
    if (vanishes0(w2.a) && vanishes0(w2.b)) {
      WorkItem child;
      child.parent = idx;
      child.addr = it.addr;
      child.addr.push_back({ChartId::second, TowerElem()});
      child.form = w2;
      child.ex = it.ex;  // strict of the previous x-axis component
      child.ey = exc;
      child.marked = push_marked(t, it.marked, ChartId::second, TowerElem());
      child.depth = it.depth + 1;
      stack.push_back(std::move(child));
    }
    // first chart: singular points of the strict form on E
    const OneForm& w1 = tr1.strict_form;
    UPoly g = up_gcd(t, bp_at_x0(w1.a), bp_at_x0(w1.b));
    if (up_deg(g) >= 1) {
      auto [t2, roots] = all_roots(std::move(t), g);
      t = std::move(t2);
      for (auto rit = roots.rbegin(); rit != roots.rend(); ++rit) {
        const TowerElem& c = *rit;
        WorkItem child;
        child.parent = idx;
        child.addr = it.addr;
        child.addr.push_back({ChartId::first, c});
        child.form = {bp_shift(t, w1.a, TowerElem(), c),
                      bp_shift(t, w1.b, TowerElem(), c), true};
        child.ex = exc;
        child.ey = c.is_zero() ? it.ey : std::nullopt;
        child.marked = push_marked(t, it.marked, ChartId::first, c);
        child.depth = it.depth + 1;
        stack.push_back(std::move(child));
      }
    }
  }

  tree.tower = t;
  tree.accepted = !rejected;
  if (!tree.accepted) return tree;

  if (tree.nodes.size() == 1) {
    root_branches(tree);
  } else {
    for (const auto& n : tree.nodes) {
      if (n.cls != NodeClass::simple_trace) continue;
      Branch b;
      b.id = "B" + std::to_string(tree.branches.size() + 1);
      b.leaf = n.index;
      auto v = trace_leaf_direction(tree.tower, n);
      b.dir_x = v.first;
      b.dir_y = v.second;
      compute_nu(tree, b);
      tree.branches.push_back(std::move(b));
    }
  }
  match_equations(tree.tower, tree);
  return tree;
}

int branch_pairing(const ResolutionTree& tree, const Branch& a,
                   const Branch& b) {
  (void)tree;
  int s = 0;
  for (const auto& [na, va] : a.nu)
    for (const auto& [nb, vb] : b.nu)
      if (na == nb) s += va * vb;
  return s;
}

// ---------------------------------------------------------------------------
// list desingularization

ListDesing desingularize_list(Tower t, const std::vector<BiPoly>& fs,
                              int max_depth) {
  for (const auto& f : fs)
    if (f.is_zero()) throw std::invalid_argument("zero function in list");
  ListDesing out;
  struct Item {
    int parent;
    NodeAddress addr;
    std::vector<BiPoly> totals;
    int depth;
  };
  std::vector<Item> stack{{-1, {}, fs, 0}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    ListNode n;
    n.index = static_cast<int>(out.nodes.size());
    n.parent = it.parent;
    n.address = it.addr;
    n.totals = it.totals;

    bool ok = true;
    std::vector<MonomialCertificate> certs;
    for (size_t i = 0; i < it.totals.size(); ++i) {
      auto [ex, ey] = bp_monomial_content(it.totals[i]);
      BiPoly u = bp_div_monomial(it.totals[i], ex, ey);
      TowerElem uv = bp_coeff(u, 0, 0);
      if (uv.is_zero()) ok = false;
      certs.push_back({i, ex, ey, uv});
    }
    if (ok) {
      // pairwise divisibility of the monomial parts
      for (size_t i = 0; ok && i < certs.size(); ++i)
        for (size_t j = i + 1; ok && j < certs.size(); ++j) {
          bool le = certs[i].ex <= certs[j].ex && certs[i].ey <= certs[j].ey;
          bool ge = certs[i].ex >= certs[j].ex && certs[i].ey >= certs[j].ey;
          if (!le && !ge) ok = false;
        }
    }
    if (ok) {
      n.terminal = true;
      n.certificates = std::move(certs);
      out.nodes.push_back(std::move(n));
      continue;
    }
    out.nodes.push_back(n);
    if (it.depth >= max_depth)
      throw DepthCapError("blow-up depth cap exceeded");
    ++out.blowups;

    // second chart point
    Item c2;
    c2.parent = n.index;
    c2.addr = it.addr;
    c2.addr.push_back({ChartId::second, TowerElem()});
    c2.depth = it.depth + 1;
    for (const auto& f : it.totals)
      c2.totals.push_back(chart_subst_poly(t, f, ChartId::second));
    stack.push_back(std::move(c2));

    // first chart: the origin plus every root of a strict part on E
    std::vector<BiPoly> totals1;
    std::vector<TowerElem> cands{TowerElem()};
    for (const auto& f : it.totals) {
      BiPoly tot = chart_subst_poly(t, f, ChartId::first);
      int k = 1 << 29;
      for (const auto& [e, c] : tot.terms) k = std::min(k, e.first);
      UPoly rest = bp_at_x0(bp_div_monomial(tot, k, 0));
      totals1.push_back(std::move(tot));
      if (up_deg(rest) >= 1) {
        auto [t2, roots] = all_roots(std::move(t), rest);
        t = std::move(t2);
        cands.insert(cands.end(), roots.begin(), roots.end());
      }
    }
    std::sort(cands.begin(), cands.end(),
              [&](const TowerElem& a, const TowerElem& b) {
                return te_lt(t, a, b);
              });
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (auto rit = cands.rbegin(); rit != cands.rend(); ++rit) {
      Item c1;
      c1.parent = n.index;
      c1.addr = it.addr;
      c1.addr.push_back({ChartId::first, *rit});
      c1.depth = it.depth + 1;
      for (const auto& f : totals1)
        c1.totals.push_back(rit->is_zero() ? f
                                           : bp_shift(t, f, TowerElem(), *rit));
      stack.push_back(std::move(c1));
    }
  }
  out.tower = std::move(t);
  return out;
}

// ---------------------------------------------------------------------------

std::string tree_dot(const ResolutionTree& tree, const CDivisor* model) {
  std::ostringstream os;
  os << "graph dual {\n";
  auto label = [&](const std::string& id) {
    std::string s = id;
    if (model) {
      auto it = model->entries.find(id);
      if (it != model->entries.end())
        s += " = " + te_print(tree.tower, it->second);
    }
    return s;
  };
  for (const auto& e : tree.exc_ids)
    os << "  \"" << e << "\" [shape=circle, label=\"" << label(e) << "\"];\n";
  for (const auto& b : tree.branches)
    os << "  \"" << b.id << "\" [shape=box, label=\"" << label(b.id) << "\"];\n";
  std::set<std::pair<std::string, std::string>> edges;
  std::map<int, std::string> leaf_branch;
  for (const auto& b : tree.branches) leaf_branch[b.leaf] = b.id;
  for (const auto& n : tree.nodes) {
    if (n.cls == NodeClass::simple_corner && n.exc_x && n.exc_y)
      edges.insert({*n.exc_x, *n.exc_y});
    if (n.cls == NodeClass::simple_trace) {
      auto it = leaf_branch.find(n.index);
      std::optional<std::string> e = n.exc_x ? n.exc_x : n.exc_y;
      if (it != leaf_branch.end() && e) edges.insert({*e, it->second});
    }
  }
  if (tree.nodes.size() == 1 && tree.branches.size() == 2)
    edges.insert({tree.branches[0].id, tree.branches[1].id});
  for (const auto& [u, v] : edges)
    os << "  \"" << u << "\" -- \"" << v << "\";\n";
  os << "}\n";
  return os.str();
}

}  // namespace folmod
