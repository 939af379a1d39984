#include "folmod/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace folmod {

std::string address_string(const Tower& t, const NodeAddress& addr) {
  std::string s = "o";
  for (const auto& step : addr) {
    if (step.chart == ChartId::first)
      s += "/1[" + te_print(t, step.center) + "]";
    else
      s += "/2";
  }
  return s;
}

nlohmann::json te_json(const Tower& t, const TowerElem& v) {
  if (auto r = te_is_rational(v)) return rat_str(*r);
  return nlohmann::json::parse(te_to_json(t, v));
}

const char* class_name(NodeClass c) {
  switch (c) {
    case NodeClass::regular: return "regular";
    case NodeClass::simple_trace: return "simple_trace";
    case NodeClass::simple_corner: return "simple_corner";
    case NodeClass::saddle_node: return "saddle_node";
    case NodeClass::resonant_presimple: return "resonant_presimple";
    case NodeClass::to_blow_up: return "to_blow_up";
  }
  return "?";
}

const char* reject_name(RejectReason r) {
  switch (r) {
    case RejectReason::none: return "none";
    case RejectReason::saddle_node: return "saddle_node";
    case RejectReason::resonant_presimple: return "resonant_presimple";
    case RejectReason::dicritical: return "dicritical";
  }
  return "?";
}

std::string classify_origin(const Tower& t, OneForm w) {
  if (w.a.is_zero() && w.b.is_zero())
    throw std::invalid_argument("zero 1-form");
  if (!w.reduced) w = strip_common_factor(t, w).first;
  auto coeff = [&](const BiPoly& p, int i, int j) {
    auto it = p.terms.find({i, j});
    return it == p.terms.end() ? TowerElem() : it->second;
  };
  if (!coeff(w.a, 0, 0).is_zero() || !coeff(w.b, 0, 0).is_zero())
    return "regular";
  TowerElem m11 = coeff(w.b, 1, 0), m12 = coeff(w.b, 0, 1);
  TowerElem m21 = te_neg(coeff(w.a, 1, 0)), m22 = te_neg(coeff(w.a, 0, 1));
  TowerElem trace = te_add(m11, m22);
  TowerElem det = te_sub(te_mul(t, m11, m22), te_mul(t, m12, m21));
  switch (eigen_ratio_class(t, trace, det).kind) {
    case RatioKind::both_zero: return "to_blow_up";
    case RatioKind::one_zero: return "saddle_node";
    case RatioKind::pos_rational: return "resonant_presimple";
    default: return "simple";
  }
}

nlohmann::json resolve_report(const ResolutionTree& tree) {
  const Tower& t = tree.tower;
  nlohmann::json j;
  j["status"] = tree.accepted ? "accepted" : "rejected";
  if (!tree.accepted) {
    j["reason"] = reject_name(tree.reject);
    j["witness_address"] =
        address_string(t, tree.nodes[tree.reject_node].address);
  }
  j["blow_ups"] = tree.blowups.size();
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : tree.nodes) {
    nlohmann::json e;
    e["address"] = address_string(t, n.address);
    e["classification"] = class_name(n.cls);
    nlohmann::json inc = nlohmann::json::array();
    if (n.exc_x) inc.push_back(*n.exc_x);
    if (n.exc_y) inc.push_back(*n.exc_y);
    e["incident"] = inc;
    nodes.push_back(e);
  }
  j["nodes"] = nodes;
  j["exceptional"] = tree.exc_ids;
  nlohmann::json branches = nlohmann::json::array();
  for (const auto& b : tree.branches) {
    nlohmann::json e;
    e["id"] = b.id;
    e["address"] = address_string(t, tree.nodes[b.leaf].address);
    nlohmann::json nu = nlohmann::json::array();
    for (const auto& [node, v] : b.nu)
      nu.push_back({{"address", address_string(t, tree.nodes[node].address)},
                    {"nu", v}});
    e["multiplicities"] = nu;
    if (b.matched_label) e["equation"] = *b.matched_label;
    branches.push_back(e);
  }
  j["branches"] = branches;
  return j;
}

nlohmann::json model_report(const ResolutionTree& tree, const IndexMatrix& A,
                            const DivisorialModel& model,
                            const VerifyReport& check) {
  const Tower& t = tree.tower;
  nlohmann::json j;
  j["status"] = "accepted";
  nlohmann::json branches = nlohmann::json::array();
  for (size_t i = 0; i < A.branch_ids.size(); ++i) {
    nlohmann::json e;
    const std::string& id = A.branch_ids[i];
    e["id"] = id;
    for (const auto& b : tree.branches)
      if (b.id == id)
        e["address"] = address_string(t, tree.nodes[b.leaf].address);
    e["cs_index"] = te_json(t, A.entries[i][i]);
    e["coefficient"] = te_json(t, model.divisor.entries.at(id));
    branches.push_back(e);
  }
  j["branches"] = branches;
  nlohmann::json exc = nlohmann::json::array();
  for (const auto& [id, mu] : model.exceptional)
    exc.push_back({{"id", id}, {"coefficient", te_json(t, mu)}});
  j["exceptional"] = exc;
  nlohmann::json matrix = nlohmann::json::array();
  for (const auto& row : A.entries) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& v : row) r.push_back(te_json(t, v));
    matrix.push_back(r);
  }
  j["matrix"] = matrix;
  j["checks"] = {{"support", check.support_ok},
                 {"indices", check.indices_ok},
                 {"divisor_dicritical", check.divisor_dicritical}};
  return j;
}

nlohmann::json list_report(const ListDesing& d) {
  const Tower& t = d.tower;
  nlohmann::json j;
  j["status"] = "desingularized";
  j["blow_ups"] = d.blowups;
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& n : d.nodes) {
    if (!n.terminal) continue;
    nlohmann::json e;
    e["address"] = address_string(t, n.address);
    nlohmann::json certs = nlohmann::json::array();
    for (const auto& c : n.certificates)
      certs.push_back({{"function", c.fn},
                       {"exponents", {c.ex, c.ey}},
                       {"unit", te_json(t, c.unit_value)}});
    e["certificates"] = certs;
    terms.push_back(e);
  }
  j["terminal_points"] = terms;
  return j;
}

void write_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + tmp);
    os << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp);
}

}  // namespace folmod
