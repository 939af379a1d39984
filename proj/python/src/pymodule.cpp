#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "folmod/parse.hpp"
#include "folmod/report.hpp"

namespace py = pybind11;
using namespace folmod;

namespace {

std::pair<Tower, OneForm> parse_form_text(const std::string& text) {
  ParseResult r = parse_expression(text);
  if (r.kind == ParseResult::kForm) return {r.tower, r.form};
  if (r.kind == ParseResult::kLogPresentation)
    return {std::move(r.tower), log_to_form(r.tower, r.logp)};
  throw std::invalid_argument("expected a differential 1-form");
}

using EqList = std::vector<std::pair<std::string, std::string>>;

ResolveOptions make_options(Tower& t, const EqList& eqs, int max_depth,
                            int tower_cap) {
  ResolveOptions opt;
  opt.max_depth = max_depth;
  opt.tower_cap = tower_cap;
  for (const auto& [label, text] : eqs) {
    ParseResult r = parse_expression(text, t);
    if (r.kind != ParseResult::kPoly)
      throw std::invalid_argument("equation must be a polynomial: " + label);
    t = std::move(r.tower);
    opt.equations.emplace_back(label, std::move(r.poly));
  }
  return opt;
}

std::string classify_py(const std::string& form) {
  auto [t, w] = parse_form_text(form);
  return classify_origin(t, w);
}

std::string resolve_py(const std::string& form, const EqList& eqs,
                       int max_depth, int tower_cap) {
  auto [t, w] = parse_form_text(form);
  ResolveOptions opt = make_options(t, eqs, max_depth, tower_cap);
  return resolve_report(resolve(t, w, opt)).dump();
}

std::string model_py(const std::string& form, const EqList& eqs,
                     int max_depth, int tower_cap) {
  auto [t, w] = parse_form_text(form);
  ResolveOptions opt = make_options(t, eqs, max_depth, tower_cap);
  ResolutionTree tree = resolve(t, w, opt);
  if (!tree.accepted) return resolve_report(tree).dump();
  IndexMatrix A = build_index_matrix(
      tree, opt.equations.empty() ? nullptr : &opt.equations);
  DivisorialModel mk = divisorial_model_kernel(tree, A);
  DivisorialModel mp = divisorial_model_propagation(tree);
  if (!(mk.divisor.entries == mp.divisor.entries))
    throw std::logic_error("model algorithms disagree");
  return model_report(tree, A, mk, verify_model(tree, mk.divisor)).dump();
}

std::string dot_py(const std::string& form, const EqList& eqs) {
  auto [t, w] = parse_form_text(form);
  ResolveOptions opt = make_options(t, eqs, 64, 64);
  ResolutionTree tree = resolve(t, w, opt);
  if (!tree.accepted) return tree_dot(tree, nullptr);
  IndexMatrix A = build_index_matrix(
      tree, opt.equations.empty() ? nullptr : &opt.equations);
  DivisorialModel mk = divisorial_model_kernel(tree, A);
  CDivisor annotated = mk.divisor;
  for (const auto& [id, mu] : mk.exceptional) annotated.set(id, mu);
  return tree_dot(tree, &annotated);
}

// coefficients as expression texts; returns None or the witness exponents
py::object dicritical_py(const std::vector<std::string>& coeffs) {
  Tower t;
  std::vector<TowerElem> lam;
  for (const auto& text : coeffs) {
    ParseResult r = parse_expression(text, t);
    if (r.kind != ParseResult::kPoly || bp_order(r.poly) != 0)
      throw std::invalid_argument("coefficient must be a nonzero constant");
    t = std::move(r.tower);
    lam.push_back(r.poly.terms.begin()->second);
  }
  auto w = dicritical_decide(t, lam);
  if (!w) return py::none();
  py::list out;
  for (const auto& m : w->m) out.append(py::int_(py::str(m.str())));
  return out;
}

std::string reduce_list_py(const std::vector<std::string>& polys,
                           int max_depth) {
  Tower t;
  std::vector<BiPoly> fs;
  for (const auto& text : polys) {
    ParseResult r = parse_expression(text, t);
    if (r.kind != ParseResult::kPoly)
      throw std::invalid_argument("list entries must be polynomials");
    t = std::move(r.tower);
    fs.push_back(std::move(r.poly));
  }
  return list_report(desingularize_list(t, fs, max_depth)).dump();
}

}  // namespace

PYBIND11_MODULE(_folmod, m) {
  m.doc() = "exact divisorial and logarithmic models of plane foliations";
  py::register_exception<SyntaxError>(m, "ParseError", PyExc_ValueError);
  m.def("classify", &classify_py, py::arg("form"),
        "classification of the origin singularity of a 1-form expression");
  m.def("resolve_json", &resolve_py, py::arg("form"),
        py::arg("equations") = EqList{}, py::arg("max_depth") = 64,
        py::arg("tower_cap") = 64);
  m.def("model_json", &model_py, py::arg("form"),
        py::arg("equations") = EqList{}, py::arg("max_depth") = 64,
        py::arg("tower_cap") = 64);
  m.def("dual_graph_dot", &dot_py, py::arg("form"),
        py::arg("equations") = EqList{});
  m.def("dicritical_witness", &dicritical_py, py::arg("coefficients"));
  m.def("reduce_list_json", &reduce_list_py, py::arg("polynomials"),
        py::arg("max_depth") = 64);
}
