// folmod: exact resolution, classification and divisorial/logarithmic models
// of plane foliation germs.

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "folmod/model.hpp"
#include "folmod/parse.hpp"
#include "folmod/report.hpp"

using namespace folmod;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kParseError = 2;
constexpr int kRejected = 3;
constexpr int kCapExceeded = 4;

struct Options {
  std::string json_path, dot_path, equations_path;
  int max_depth = 64;
  int tower_cap = 64;
  int jobs = 1;
};

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

// towers from separate files must agree level by level on the shared prefix
Tower merge_towers(const Tower& a, const Tower& b) {
  const Tower& lo = a.height() <= b.height() ? a : b;
  const Tower& hi = a.height() <= b.height() ? b : a;
  for (int l = 0; l < lo.height(); ++l)
    if (lo.levels[l].minpoly != hi.levels[l].minpoly)
      throw std::runtime_error("incompatible towers between input files");
  return hi;
}

OneForm foliation_form(const InputFile& f, const Tower& t) {
  if (f.kind != InputFile::kFoliation)
    throw std::runtime_error("expected a foliation: file");
  if (f.form) return *f.form;
  if (f.logp) return log_to_form(t, *f.logp);
  throw std::runtime_error("empty foliation file");
}

std::vector<std::pair<std::string, BiPoly>> equation_list(const InputFile& f) {
  std::vector<std::pair<std::string, BiPoly>> out;
  for (const auto& e : f.entries) {
    if (!e.equation)
      throw std::runtime_error("entry " + e.label + " has no equation");
    out.emplace_back(e.label, *e.equation);
  }
  return out;
}

struct RunResult {
  int code = kOk;
  json report;
  std::string dot;
  std::string summary;
};

RunResult run_foliation_command(const std::string& cmd, const std::string& path,
                                const Options& opt) {
  RunResult res;
  std::string text = slurp(path);
  InputFile in = parse_file(text);
  Tower t = in.tower;
  ResolveOptions ropt;
  ropt.max_depth = opt.max_depth;
  ropt.tower_cap = opt.tower_cap;
  if (!opt.equations_path.empty()) {
    InputFile eq = parse_file(slurp(opt.equations_path));
    t = merge_towers(t, eq.tower);
    ropt.equations = equation_list(eq);
  }
  OneForm w = foliation_form(in, t);

  if (cmd == "classify") {
    std::string cls = classify_origin(t, w);
    res.report = {{"classification", cls}, {"status", "ok"}};
    res.summary = "classification: " + cls;
    return res;
  }

  ResolutionTree tree = resolve(t, w, ropt);
  if (!tree.accepted) {
    res.code = kRejected;
    res.report = resolve_report(tree);
    res.summary = std::string("rejected: ") + reject_name(tree.reject) +
                  " at " +
                  address_string(tree.tower,
                                 tree.nodes[tree.reject_node].address);
    res.dot = tree_dot(tree, nullptr);
    return res;
  }
  if (cmd == "resolve") {
    res.report = resolve_report(tree);
    res.summary = "accepted: " + std::to_string(tree.blowups.size()) +
                  " blow-ups, " + std::to_string(tree.branches.size()) +
                  " branches";
    res.dot = tree_dot(tree, nullptr);
    return res;
  }
  // model
  IndexMatrix A = build_index_matrix(
      tree, ropt.equations.empty() ? nullptr : &ropt.equations);
  DivisorialModel mk = divisorial_model_kernel(tree, A);
  DivisorialModel mp = divisorial_model_propagation(tree);
  if (!(mk.divisor.entries == mp.divisor.entries))
    throw std::logic_error("model algorithms disagree");
  VerifyReport check = verify_model(tree, mk.divisor);
  res.report = model_report(tree, A, mk, check);
  res.summary = "model on " + std::to_string(tree.branches.size()) +
                " branches" + (check.pass() ? "" : " (verification failed)");
  CDivisor annotated = mk.divisor;
  for (const auto& [id, mu] : mk.exceptional) annotated.set(id, mu);
  res.dot = tree_dot(tree, &annotated);
  return res;
}

RunResult run_dicritical(const std::string& path) {
  RunResult res;
  InputFile in = parse_file(slurp(path));
  if (in.kind != InputFile::kDivisor)
    throw std::runtime_error("expected a divisor: file");
  std::vector<std::string> labels;
  std::vector<TowerElem> lambdas;
  for (const auto& e : in.entries) {
    labels.push_back(e.label);
    lambdas.push_back(e.coeff);
  }
  auto w = dicritical_decide(in.tower, lambdas);
  if (!w) {
    res.report = {{"status", "non-dicritical"}};
    res.summary = "non-dicritical";
    return res;
  }
  res.code = kRejected;
  json witness = json::array();
  for (size_t i = 0; i < labels.size(); ++i)
    witness.push_back({{"component", labels[i]}, {"m", w->m[i].str()}});
  // replay the descent as a certificate of the dicritical behaviour
  DescentResult desc = resonance_descent(in.tower, lambdas, w->m);
  res.report = {{"status", "dicritical"},
                {"witness", witness},
                {"descent_steps", desc.steps.size()}};
  res.summary = "dicritical (nonnegative resonance found)";
  return res;
}

RunResult run_reduce_list(const std::string& path, const Options& opt) {
  RunResult res;
  InputFile in = parse_file(slurp(path));
  if (in.kind != InputFile::kList)
    throw std::runtime_error("expected a list: file");
  Tower t = in.tower;
  t.degree_cap = opt.tower_cap;
  ListDesing d = desingularize_list(t, in.polys, opt.max_depth);
  res.report = list_report(d);
  res.summary = "desingularized after " + std::to_string(d.blowups) +
                " blow-ups";
  return res;
}

RunResult run_verify(const std::string& fol_path, const std::string& div_path,
                     const Options& opt) {
  RunResult res;
  InputFile fin = parse_file(slurp(fol_path));
  InputFile din = parse_file(slurp(div_path));
  if (din.kind != InputFile::kDivisor)
    throw std::runtime_error("expected a divisor: file");
  Tower t = merge_towers(fin.tower, din.tower);
  OneForm w = foliation_form(fin, t);
  ResolveOptions ropt;
  ropt.max_depth = opt.max_depth;
  ropt.tower_cap = opt.tower_cap;
  ropt.equations = equation_list(din);
  ResolutionTree tree = resolve(t, w, ropt);
  if (!tree.accepted) {
    res.code = kRejected;
    res.report = resolve_report(tree);
    res.summary = std::string("rejected: ") + reject_name(tree.reject);
    return res;
  }
  // translate the labeled divisor onto the branch set
  CDivisor d;
  bool matched_all = true;
  for (const auto& e : din.entries) {
    bool found = false;
    for (const auto& b : tree.branches)
      if (b.matched_label == e.label) {
        d.set(b.id, e.coeff);
        found = true;
      }
    matched_all &= found;
  }
  VerifyReport check = matched_all ? verify_model(tree, d) : VerifyReport{};
  if (!matched_all) check.support_ok = false;
  json jc = {{"support", check.support_ok},
             {"indices", check.indices_ok},
             {"divisor_dicritical", check.divisor_dicritical}};
  if (check.witness) {
    json m = json::array();
    for (const auto& v : check.witness->m) m.push_back(v.str());
    jc["witness"] = m;
  }
  json violated = json::array();
  for (const auto& id : check.violated) violated.push_back(id);
  res.report = {{"status", check.pass() ? "pass" : "fail"},
                {"checks", jc},
                {"violated", violated}};
  res.summary = check.pass() ? "divisor verifies as a model"
                             : "divisor fails verification";
  res.code = check.pass() ? kOk : kRejected;
  return res;
}

int emit(const std::string& file, RunResult& res, const Options& opt,
         bool lone) {
  std::cerr << file << ": " << res.summary << "\n";
  std::string body = res.report.dump(2) + "\n";
  if (!opt.json_path.empty())
    write_atomic(opt.json_path, body);
  else if (lone)
    std::cout << body;
  if (!opt.dot_path.empty() && !res.dot.empty())
    write_atomic(opt.dot_path, res.dot);
  return res.code;
}

int run_files(const std::string& cmd, const std::vector<std::string>& files,
              const Options& opt) {
  auto run_one = [&](const std::string& f) -> RunResult {
    try {
      if (cmd == "dicritical") return run_dicritical(f);
      if (cmd == "reduce-list") return run_reduce_list(f, opt);
      return run_foliation_command(cmd, f, opt);
    } catch (const SyntaxError& e) {
      return {kParseError, {{"status", "parse-error"}, {"error", e.what()}},
              "", std::string("parse error: ") + e.what()};
    } catch (const DepthCapError& e) {
      return {kCapExceeded, {{"status", "cap-exceeded"}, {"error", e.what()}},
              "", std::string("cap exceeded: ") + e.what()};
    } catch (const TowerCapError& e) {
      return {kCapExceeded, {{"status", "cap-exceeded"}, {"error", e.what()}},
              "", std::string("cap exceeded: ") + e.what()};
    } catch (const std::exception& e) {
      return {kParseError, {{"status", "error"}, {"error", e.what()}}, "",
              std::string("error: ") + e.what()};
    }
  };
  std::vector<RunResult> results(files.size());
  if (opt.jobs > 1 && files.size() > 1) {
    std::vector<std::future<RunResult>> futs;
    for (const auto& f : files)
      futs.push_back(std::async(std::launch::async, run_one, f));
    for (size_t i = 0; i < files.size(); ++i) results[i] = futs[i].get();
  } else {
    for (size_t i = 0; i < files.size(); ++i) results[i] = run_one(files[i]);
  }
  int code = kOk;
  for (size_t i = 0; i < files.size(); ++i)
    code = std::max(code, emit(files[i], results[i], opt, files.size() == 1));
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact divisorial and logarithmic models of plane foliations"};
  app.require_subcommand(1);
  Options opt;
  std::vector<std::string> files;
  std::string fol_file, div_file;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--json", opt.json_path, "write the JSON report here");
    c->add_option("--dot", opt.dot_path, "write the dual graph in DOT here");
    c->add_option("--max-depth", opt.max_depth, "blow-up depth cap")
        ->check(CLI::PositiveNumber);
    c->add_option("--tower-cap", opt.tower_cap, "tower degree cap")
        ->check(CLI::PositiveNumber);
    c->add_option("--jobs", opt.jobs, "parallelism across input files")
        ->check(CLI::PositiveNumber);
  };
  const char* names[] = {"resolve", "model", "classify", "dicritical",
                         "reduce-list"};
  const char* descs[] = {
      "reduction of singularities of a foliation germ",
      "divisorial model of a foliation germ",
      "classification of the origin singularity",
      "nonnegative-resonance test of a divisor",
      "Appendix-style monomialization of a function list"};
  for (int i = 0; i < 5; ++i) {
    CLI::App* c = app.add_subcommand(names[i], descs[i]);
    c->add_option("files", files, "input files")->required();
    add_common(c);
    if (i < 2)
      c->add_option("--equations", opt.equations_path,
                    "divisor-format file with branch equations");
  }
  CLI::App* v = app.add_subcommand(
      "verify", "check a labeled divisor against a foliation's indices");
  v->add_option("foliation", fol_file, "foliation file")->required();
  v->add_option("divisor", div_file, "divisor file with equations")
      ->required();
  add_common(v);

  CLI11_PARSE(app, argc, argv);
  CLI::App* sub = app.get_subcommands().front();
  std::string cmd = sub->get_name();
  try {
    if (cmd == "verify") {
      RunResult res = run_verify(fol_file, div_file, opt);
      return emit(fol_file, res, opt, true);
    }
    if (!opt.json_path.empty() && files.size() > 1) {
      std::cerr << "--json requires a single input file\n";
      return kParseError;
    }
    return run_files(cmd, files, opt);
  } catch (const SyntaxError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const DepthCapError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const TowerCapError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  }
}
