// bialg: verification campaigns and derivations over the corpus
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "bialg/verify.hpp"

using namespace bialg;

namespace {

struct Common {
  std::string corpus = "corpus";
  std::vector<std::string> params;
  unsigned seed = 0;
  bool json = false;
  size_t jobs = 1;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--corpus", c.corpus, "corpus file or directory")->capture_default_str();
  app->add_option("--param", c.params, "parameter binding name=value (repeatable)");
  app->add_option("--seed", c.seed, "random seed")->capture_default_str();
  app->add_flag("--json", c.json, "JSON lines on stdout");
  app->add_option("--jobs", c.jobs, "worker threads")->capture_default_str();
}

Corpus open_corpus(const Common& c) {
  std::filesystem::path p = c.corpus;
  // the default falls back to the corpus shipped with the build
  if (c.corpus == "corpus" && !std::filesystem::exists(p)) p = BIALG_CORPUS_DIR;
  Corpus out = Corpus::load(p);
  out.validate();
  return out;
}

ParamBinding parse_params(const std::vector<std::string>& ps) {
  ParamBinding b;
  for (auto& s : ps) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("--param expects name=value, got '" + s + "'");
    b[s.substr(0, eq)] = parse_rational(s.substr(eq + 1));
  }
  return b;
}

// bind every parameter of the names, from --param or the first grid point
ParamBinding binding_for(const Corpus& c, const std::vector<std::string>& names, const ParamBinding& given) {
  ParamBinding b;
  for (auto& p : c.params_of(names)) {
    auto it = given.find(p);
    if (it == given.end()) throw InputError("parameter '" + p + "' is not bound; pass --param " + p + "=value");
    b[p] = it->second;
  }
  c.check_binding(names, b);
  return b;
}

int run_verify(const Common& cm, const std::string& sel) {
  Corpus c = open_corpus(cm);
  VerifyOptions opt;
  opt.jobs = std::max<size_t>(1, cm.jobs);
  opt.seed = cm.seed;
  if (!cm.params.empty()) opt.binding = parse_params(cm.params);
  std::vector<int> tables;
  if (sel == "all") {
    for (int t = 1; t <= 9; ++t) tables.push_back(t);
  } else {
    int t = 0;
    try {
      size_t used = 0;
      t = std::stoi(sel, &used);
      if (used != sel.size()) t = 0;
    } catch (const std::exception&) {
    }
    if (t < 1 || t > 9) throw InputError("--table expects 1..9 or all, got '" + sel + "'");
    tables.push_back(t);
  }
  bool failed = false;
  double total = 0;
  for (int t : tables) {
    RunReport rep = verify_table(c, t, opt);
    total += rep.seconds;
    failed = failed || !rep.ok();
    for (auto& r : rep.rows) {
      if (r.status == RowStatus::Pass) continue;
      if (cm.json) {
        std::cout << discrepancy_json(r).dump() << "\n";
      } else {
        std::cout << to_string(r.status) << "  " << r.anchor << "  " << r.key << "\n";
        for (auto& d : r.details) std::cout << "    " << d << "\n";
      }
    }
    if (cm.json) {
      nlohmann::json s{{"table", t},
                       {"rows", rep.rows.size()},
                       {"pass", rep.count(RowStatus::Pass)},
                       {"flagged", rep.count(RowStatus::Flagged)},
                       {"fail", rep.count(RowStatus::Fail)}};
      std::cout << s.dump() << "\n";
    } else {
      std::cout << "table " << t << ": " << rep.rows.size() << " rows, " << rep.count(RowStatus::Pass) << " pass, "
                << rep.count(RowStatus::Flagged) << " flagged, " << rep.count(RowStatus::Fail) << " fail\n";
    }
    std::cerr << "table " << t << " took " << rep.seconds << " s\n";
  }
  std::cerr << "total " << total << " s\n";
  return failed ? 1 : 0;
}

void print_matrix_brackets(const CFMatrix& P, bool json, const std::string& what) {
  if (json) {
    nlohmann::json j;
    j["kind"] = what;
    for (size_t i = 0; i < kCoords; ++i)
      for (size_t k = i + 1; k < kCoords; ++k)
        if (!P(i, k).is_zero()) j["brackets"][render_bracket(i, k)] = render(P(i, k));
    std::cout << j.dump() << "\n";
    return;
  }
  bool any = false;
  for (size_t i = 0; i < kCoords; ++i)
    for (size_t k = i + 1; k < kCoords; ++k)
      if (!P(i, k).is_zero()) {
        std::cout << render_bracket(i, k) << " = " << render(P(i, k)) << "\n";
        any = true;
      }
  if (!any) std::cout << "all brackets vanish\n";
}

int run_derive(const Common& cm, const std::string& what, const std::string& g, const std::string& d,
               const std::string& method) {
  Corpus c = open_corpus(cm);
  ParamBinding given = parse_params(cm.params);
  if (what == "fields") {
    auto b = binding_for(c, {g}, given);
    auto fr = invariant_frame(c.structure(g, b));
    if (cm.json) {
      nlohmann::json j;
      j["kind"] = "fields";
      for (size_t i = 0; i < kCoords; ++i) {
        j["left"].push_back(render_frame_row(fr.XL, i));
        j["right"].push_back(render_frame_row(fr.XR, i));
      }
      std::cout << j.dump() << "\n";
    } else {
      for (size_t i = 0; i < kCoords; ++i) std::cout << "XL" << i + 1 << " = " << render_frame_row(fr.XL, i) << "\n";
      for (size_t i = 0; i < kCoords; ++i) std::cout << "XR" << i + 1 << " = " << render_frame_row(fr.XR, i) << "\n";
    }
    return 0;
  }
  if (d.empty()) throw InputError("derive " + what + " needs --dual");
  auto b = binding_for(c, {g, d}, given);
  if (what == "poisson") {
    auto dp = derive_poisson(c, g, d, b, method);
    print_matrix_brackets(dp.P, cm.json, "poisson");
    return 0;
  }
  // rmatrix
  auto ps = verify_detail::pair_structures(c, g, d, b);
  RSolutionSet sol = solve_coboundary(ps.f, ps.fd);
  if (sol.empty) {
    if (cm.json)
      std::cout << nlohmann::json{{"kind", "rmatrix"}, {"coboundary", false}}.dump() << "\n";
    else
      std::cout << "not a coboundary: no r solves delta(r) = fd\n";
    return 0;
  }
  // prefer the representative the corpus lists, when it solves the system
  RatMatrix r = sol.particular;
  if (auto lr = listed_r(c, g, d, b, ps.fd); lr && sol.contains(*lr)) r = *lr;
  auto cl = classify_r(r, ps.f);
  if (cm.json) {
    nlohmann::json j{{"kind", "rmatrix"}, {"coboundary", true}, {"r", render_r(r)}, {"schouten", render_wedge3(cl.schouten)},
                     {"class", to_string(cl.kind)}};
    for (auto& k : sol.kernel) j["free_directions"].push_back(render_r(k));
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "r = " << render_r(r) << "\n";
    for (size_t i = 0; i < sol.kernel.size(); ++i) std::cout << "  + s" << i + 1 << " (" << render_r(sol.kernel[i]) << ")\n";
    std::cout << "[[r,r]] = " << render_wedge3(cl.schouten) << "\n";
    std::cout << "class: " << to_string(cl.kind) << (cl.reason.empty() ? "" : " (" + cl.reason + ")") << "\n";
  }
  return 0;
}

struct FlowArgs {
  bool integrate = false;
  double t_end = 1, dt = 1e-3;
  size_t hamiltonian = 2;
  std::vector<double> x0{1, 0.5, 1.0 / 3, 0.25};
  std::string csv;
};

int run_integrable(const Common& cm, int id, const FlowArgs& fa) {
  if (id != 1 && id != 2) throw InputError("--example must be 1 or 2");
  Corpus c = open_corpus(cm);
  IntegrableExample ex = example_from_fixture(c, "example" + std::to_string(id));
  auto dar = darboux_check(ex, 20, cm.seed);
  auto clo = closure_check(ex, 20, cm.seed);
  bool ok = dar.pass && clo.pass;
  nlohmann::json j{{"example", id}, {"phase_space", ex.phase_space}, {"symmetry", ex.symmetry_name},
                   {"darboux_worst", dar.worst}, {"closure_worst", clo.worst}};
  if (!cm.json) {
    std::cout << "example " << id << ": phase space " << ex.phase_space << ", symmetry " << ex.symmetry_name << "\n";
    std::cout << "darboux  worst " << dar.worst << (dar.pass ? "  ok" : "  FAIL") << "\n";
    std::cout << "closure  worst " << clo.worst << (clo.pass ? "  ok" : "  FAIL") << "\n";
  }
  if (fa.integrate || !fa.csv.empty()) {
    if (fa.x0.size() != kCoords) throw InputError("--x0 needs four values");
    if (fa.hamiltonian < 1 || fa.hamiltonian > kCoords) throw InputError("--hamiltonian must be 1..4");
    if (fa.dt <= 0 || fa.t_end < 0) throw InputError("--dt must be positive and --t-end non-negative");
    Point4 x0{fa.x0[0], fa.x0[1], fa.x0[2], fa.x0[3]};
    auto fr = flow_conserve(ex, fa.hamiltonian - 1, fa.t_end, fa.dt, x0, !fa.csv.empty());
    double worst = 0;
    for (auto k : fr.conserved) worst = std::max(worst, fr.drift[k]);
    bool flow_ok = !fr.exploded && worst < 1e-6;
    ok = ok && flow_ok;
    j["hamiltonian"] = fa.hamiltonian;
    j["conserved"] = nlohmann::json::array();
    for (auto k : fr.conserved) j["conserved"].push_back(k + 1);
    j["drift"] = fr.drift;
    j["near_singular"] = fr.near_singular;
    if (!cm.json) {
      std::cout << "flow H = Q" << fa.hamiltonian << ", t in [0, " << fa.t_end << "], dt " << fa.dt << "\n";
      for (auto k : fr.conserved) std::cout << "  Q" << k + 1 << " drift " << fr.drift[k] << "\n";
      if (fr.exploded) std::cout << "  trajectory left the finite region\n";
      if (fr.near_singular) std::cout << "  passed within 1e-6 of the singular locus\n";
      std::cout << (flow_ok ? "flow ok" : "flow FAIL") << "\n";
    }
    if (!fa.csv.empty()) {
      std::ofstream out(fa.csv);
      if (!out) throw InputError("cannot write " + fa.csv);
      write_trajectory_csv(out, fr);
    }
  }
  j["pass"] = ok;
  if (cm.json) std::cout << j.dump() << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Four-dimensional Lie bialgebras: verification and derivations"};
  app.require_subcommand(1);
  Common cm;

  auto* verify = app.add_subcommand("verify", "run the checks for one table or all of them");
  std::string table;
  verify->add_option("--table", table, "1..9 or all")->required();
  add_common(verify, cm);

  auto* derive = app.add_subcommand("derive", "derive a Poisson bracket, invariant frame or r-matrix");
  std::string what, alg, dual, method = "pi";
  derive->add_option("what", what, "poisson | fields | rmatrix")
      ->required()
      ->check(CLI::IsMember({"poisson", "fields", "rmatrix"}));
  derive->add_option("--algebra", alg, "algebra (first of the pair)")->required();
  derive->add_option("--dual", dual, "dual algebra label");
  derive->add_option("--method", method, "sklyanin | pi")->check(CLI::IsMember({"sklyanin", "pi"}))->capture_default_str();
  add_common(derive, cm);

  auto* integ = app.add_subcommand("integrable", "check an integrable example and optionally integrate its flow");
  int example = 0;
  FlowArgs fa;
  integ->add_option("--example", example, "1 or 2")->required();
  integ->add_flag("--integrate", fa.integrate, "integrate the Hamiltonian flow with RK4");
  integ->add_option("--t-end", fa.t_end, "final time")->capture_default_str();
  integ->add_option("--dt", fa.dt, "step")->capture_default_str();
  integ->add_option("--hamiltonian", fa.hamiltonian, "index k of H = Qk")->capture_default_str();
  integ->add_option("--x0", fa.x0, "start point, four values")->expected(4);
  integ->add_option("--csv", fa.csv, "write the trajectory as CSV (implies --integrate)");
  add_common(integ, cm);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    if (*verify) return run_verify(cm, table);
    if (*derive) return run_derive(cm, what, alg, dual, method);
    if (*integ) return run_integrable(cm, example, fa);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
