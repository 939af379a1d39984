#pragma once

#include <optional>
#include <string>
#include <vector>

#include "folmod/blowup.hpp"
#include "folmod/divisor.hpp"

namespace folmod {

enum class NodeClass {
  regular,
  simple_trace,
  simple_corner,
  saddle_node,
  resonant_presimple,
  to_blow_up
};

enum class RejectReason { none, saddle_node, resonant_presimple, dicritical };

struct AddressStep {
  ChartId chart;
  TowerElem center;  // recentring value on E (first chart); unused for second
};
using NodeAddress = std::vector<AddressStep>;

class DepthCapError : public std::runtime_error {
 public:
  explicit DepthCapError(const std::string& m) : std::runtime_error(m) {}
};

struct ResolutionNode {
  int index = 0;
  int parent = -1;
  NodeAddress address;
  OneForm form;  // reduced local 1-form recentred at this point
  // exceptional components lying on the local axes, by id
  std::optional<std::string> exc_x, exc_y;
  NodeClass cls = NodeClass::regular;
  TowerElem trace, det;  // linear part of the dual vector field X = b dx - a dy
  // strict transforms of labeled equations passing through this point
  std::vector<std::pair<std::string, BiPoly>> marked;
  std::string created_exc;  // set when this node was blown up
  int depth = 0;
};

struct Branch {
  std::string id;  // B1, B2, ... in canonical (address-lexicographic) order
  int leaf;        // node index of the trace leaf
  // for an unblown simple/regular root: which separatrix this branch is
  // ("x", "y", or "leaf" for the regular case)
  std::string root_axis;
  // multiplicity nu_p(branch) at every node on the path root..leaf
  // (node index -> nu); the leaf itself carries nu = 1
  std::vector<std::pair<int, int>> nu;
  std::optional<std::string> matched_label;
  // tangent direction of the branch at its leaf (equation matching)
  TowerElem dir_x, dir_y;
  // Camacho-Sad index, precomputed only for branches of an unblown root
  // (may have required a tower extension); trace-leaf branches get theirs
  // from the leaf form instead
  std::optional<TowerElem> root_cs;
};

struct ResolutionTree {
  Tower tower;
  std::vector<ResolutionNode> nodes;
  std::vector<int> blowup_order;
  std::vector<std::string> exc_ids;
  struct BlowupRec {
    int node;
    std::string exc;
    int form_exceptional_order;  // k of the form transform
    int nu0;                     // nu_0 of the form at the node
  };
  std::vector<BlowupRec> blowups;
  std::vector<Branch> branches;
  bool accepted = false;
  RejectReason reject = RejectReason::none;
  int reject_node = -1;

  const ResolutionNode& root() const { return nodes.front(); }
};

struct ResolveOptions {
  int max_depth = 64;
  int tower_cap = 64;
  // labeled separatrix equations to track to trace leaves
  std::vector<std::pair<std::string, BiPoly>> equations;
};

// Seidenberg reduction driver. Always returns a tree; `accepted` is false
// with reject/reject_node set when the input is not a generalized curve.
// Throws DepthCapError / TowerCapError on exceeded caps.
ResolutionTree resolve(Tower t, OneForm w, const ResolveOptions& opt = {});

// All roots of g over (an extension of) t, splitting completely.
std::pair<Tower, std::vector<TowerElem>> all_roots(Tower t, const UPoly& g);

// Points of Sing(F) on the exceptional line x = 0 for a reduced local form,
// as y-positions (the tower may grow).
std::pair<Tower, std::vector<TowerElem>> singular_points_on_divisor(
    Tower t, const OneForm& w);

// Logarithmic order of the reduced form at the origin with respect to the
// divisor formed by the chosen axes; throws std::domain_error if a chosen
// axis is not invariant.
int log_order(const Tower& t, const OneForm& w, bool axis_x, bool axis_y);

// intersection number of two branches at the origin from the shared part of
// their paths (Noether): sum over common nodes of nu_p * nu_p'
int branch_pairing(const ResolutionTree& tree, const Branch& a,
                   const Branch& b);

// Camacho-Sad index of an invariant axis at a simple point (ratio of the
// transverse and tangent eigenvalues of the dual vector field).
TowerElem cs_axis(const Tower& t, const OneForm& w, bool axis_is_x);

// ---------------------------------------------------------------------------
// Appendix-style list desingularization

struct MonomialCertificate {
  size_t fn;            // index of the function in the input list
  int ex, ey;           // exponents of the monomial part
  TowerElem unit_value; // value of the unit factor at the point
};

struct ListNode {
  int index = 0;
  int parent = -1;
  NodeAddress address;
  std::vector<BiPoly> totals;  // total transforms of the input list
  bool terminal = false;
  std::vector<MonomialCertificate> certificates;  // when terminal
};

struct ListDesing {
  Tower tower;
  std::vector<ListNode> nodes;
  int blowups = 0;
};

ListDesing desingularize_list(Tower t, const std::vector<BiPoly>& fs,
                              int max_depth = 64);

// DOT rendering of the dual graph of the resolved model; coefficients from
// the model divisor are added to the labels when provided.
std::string tree_dot(const ResolutionTree& tree, const CDivisor* model);

}  // namespace folmod
