#ifndef BIALG_VERIFY_HPP
#define BIALG_VERIFY_HPP

#include <atomic>
#include <chrono>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "corpus.hpp"
#include "frames.hpp"
#include "integrable.hpp"
#include "poisson.hpp"
#include "rmatrix.hpp"

namespace bialg {

// Pass: the row holds as printed. Flagged: the corpus marks the row and the check reproduces
// the recorded discrepancy. Fail: anything else.
enum class RowStatus { Pass, Flagged, Fail };

inline const char* to_string(RowStatus s) {
  switch (s) {
    case RowStatus::Pass: return "pass";
    case RowStatus::Flagged: return "flagged";
    case RowStatus::Fail: return "fail";
  }
  return "?";
}

struct RowResult {
  int table = 0;
  std::string anchor, key;
  std::vector<std::string> names;
  RowStatus status = RowStatus::Pass;
  std::vector<std::string> details;
  size_t bindings = 0;
  bool data_match = true;     // corpus payload agrees with the derived one (frames, Poisson rows)
  bool printed_match = true;  // the same for the payload as printed, before corrections
};

struct RunReport {
  int table = 0;
  std::vector<RowResult> rows;
  double seconds = 0;

  size_t count(RowStatus s) const {
    size_t n = 0;
    for (auto& r : rows) n += r.status == s;
    return n;
  }
  bool ok() const { return count(RowStatus::Fail) == 0; }
};

struct VerifyOptions {
  size_t jobs = 1;
  unsigned seed = 0;
  std::optional<ParamBinding> binding;  // replaces the grid when set
};

inline std::string binding_text(const ParamBinding& b) {
  if (b.empty()) return "";
  std::string s = "[";
  for (auto& [k, v] : b) s += (s.size() > 1 ? ", " : "") + k + "=" + to_string(v);
  return s + "]";
}

inline nlohmann::json discrepancy_json(const RowResult& r) {
  nlohmann::json j;
  j["table"] = r.table;
  j["row"] = r.anchor;
  j["names"] = r.names;
  j["status"] = to_string(r.status);
  j["details"] = r.details;
  return j;
}

namespace verify_detail {

// f on the first algebra, fd its dual. A pair listed in reverse, (dual, g), is read
// as the dual bialgebra: f' = fd, fd' = f.
struct PairStructures {
  StructureConstants f, fd;
  bool reversed = false;
  const CorpusEntry* entry = nullptr;
};

inline PairStructures pair_structures(const Corpus& c, const std::string& g, const std::string& d, const ParamBinding& b,
                                      const Payload* payload = nullptr) {
  c.check_binding({g, d}, b);
  if (auto* e = c.bialgebra(g, d)) {
    const auto& br = payload ? payload->brackets : e->data.brackets;
    return {structure_of(c.definition(g).data.brackets, b), structure_of(br, b), false, e};
  }
  if (auto* e = c.bialgebra(d, g)) {
    const auto& br = payload ? payload->brackets : e->data.brackets;
    return {structure_of(br, b), structure_of(c.definition(d).data.brackets, b), true, e};
  }
  throw InputError("no bialgebra (" + g + ", " + d + ") in the corpus");
}

inline std::vector<ParamBinding> bindings_for(const Corpus& c, const std::vector<std::string>& names,
                                              const VerifyOptions& opt) {
  if (opt.binding) {
    ParamBinding b;
    for (auto& p : c.params_of(names)) {
      auto it = opt.binding->find(p);
      if (it == opt.binding->end()) throw InputError("--param does not bind '" + p + "'");
      b[p] = it->second;
    }
    c.check_binding(names, b);
    return {b};
  }
  return c.grid(names);
}

inline bool has_printed(const CorpusEntry& e) {
  const Payload& p = e.printed;
  return !p.brackets.empty() || p.r || p.dual_r || p.schouten || p.dual_schouten || !p.left.empty() ||
         !p.right.empty() || !p.pb.empty();
}

// corrected/printed outcomes -> row status
inline void settle(RowResult& row, const CorpusEntry& e, bool ok, std::optional<bool> printed_ok) {
  if (!e.flagged()) {
    row.status = ok ? RowStatus::Pass : RowStatus::Fail;
    return;
  }
  for (auto& f : e.flags) row.details.push_back("flag: " + f);
  if (printed_ok) {
    if (ok && !*printed_ok) {
      row.status = RowStatus::Flagged;
    } else {
      row.status = RowStatus::Fail;
      row.details.push_back(ok ? "flagged row, but the printed value also passes" : "corrected value fails");
    }
    return;
  }
  row.status = RowStatus::Flagged;
  row.details.push_back(ok ? "derived value agrees" : "derived value differs from the printed one");
}

// evaluation points for an affine or quadratic dependence on free symbols:
// 0, e_p, 2 e_p, e_p + e_q
inline std::vector<ParamBinding> free_points(const std::vector<std::string>& free) {
  std::vector<ParamBinding> pts;
  ParamBinding zero;
  for (auto& s : free) zero[s] = 0;
  pts.push_back(zero);
  for (size_t p = 0; p < free.size(); ++p) {
    for (int v : {1, 2}) {
      auto b = zero;
      b[free[p]] = v;
      pts.push_back(b);
    }
    for (size_t q = p + 1; q < free.size(); ++q) {
      auto b = zero;
      b[free[p]] = 1;
      b[free[q]] = 1;
      pts.push_back(b);
    }
  }
  return pts;
}

inline ParamBinding merged(ParamBinding a, const ParamBinding& b) {
  for (auto& [k, v] : b) a[k] = v;
  return a;
}

inline bool same(const Tensor3& a, const Tensor3& b) {
  size_t n = a.n;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        if (a(i, j, k) != b(i, j, k)) return false;
  return true;
}

inline CFMatrix pb_matrix(const std::vector<PbLine>& pb, const ParamBinding& b) {
  CFMatrix P(kCoords, kCoords);
  for (auto& l : pb) {
    P(l.i, l.j) = expr_to_cf(l.value, b);
    P(l.j, l.i) = -P(l.i, l.j);
  }
  return P;
}

inline std::vector<std::string> matrix_diff(const CFMatrix& derived, const CFMatrix& printed) {
  std::vector<std::string> out;
  for (size_t i = 0; i < kCoords; ++i)
    for (size_t j = i + 1; j < kCoords; ++j)
      if (!(derived(i, j) == printed(i, j)))
        out.push_back(render_bracket(i, j) + ": printed " + render(printed(i, j)) + ", derived " + render(derived(i, j)));
  return out;
}

template <class F>
void parallel_for(size_t n, size_t jobs, F&& fn) {
  if (jobs <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex m;
  for (size_t t = 0; t < std::min(jobs, n); ++t)
    pool.emplace_back([&] {
      for (size_t i; (i = next++) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> g(m);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

inline RowResult start(int table, const CorpusEntry& e) {
  RowResult r;
  r.table = table;
  r.anchor = e.anchor;
  r.key = e.key();
  r.names = e.names;
  return r;
}

// run one checker per entry; a checker that throws fails its row
inline RunReport run_rows(int table, const std::vector<const CorpusEntry*>& es, const VerifyOptions& opt,
                          const std::function<void(const CorpusEntry&, RowResult&)>& check) {
  auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.table = table;
  rep.rows.resize(es.size());
  parallel_for(es.size(), opt.jobs, [&](size_t i) {
    RowResult row = start(table, *es[i]);
    try {
      check(*es[i], row);
    } catch (const Error& ex) {
      row.status = RowStatus::Fail;
      row.details.push_back(std::string("error: ") + ex.what());
    }
    rep.rows[i] = std::move(row);
  });
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace verify_detail

// ---------------------------------------------------------------- table 1: algebras

inline RunReport verify_algebras(const Corpus& c, const VerifyOptions& opt = {}) {
  using namespace verify_detail;
  return run_rows(1, c.from_table(EntryKind::Algebra, 1), opt, [&](const CorpusEntry& e, RowResult& row) {
    bool ok = true;
    for (auto& b : bindings_for(c, e.names, opt)) {
      ++row.bindings;
      auto f = c.structure(e.names[0], b);
      if (!jacobi_check(f).pass) {
        ok = false;
        row.details.push_back("Jacobi fails " + binding_text(b));
      }
      auto s = find_symplectic(f, opt.seed);
      if (!s.found) {
        ok = false;
        row.details.push_back("no nondegenerate closed 2-form " + binding_text(b) + ", best rank " +
                              std::to_string(s.max_rank));
      }
    }
    settle(row, e, ok, std::nullopt);
  });
}

// ---------------------------------------------------------------- table 2: bialgebras

inline bool bialgebra_holds(const StructureConstants& f, const StructureConstants& fd, std::string* why) {
  if (!jacobi_check(fd).pass) return *why = "dual Jacobi fails", false;
  if (!mixed_jacobi_check(f, fd).pass) return *why = "mixed Jacobi fails", false;
  if (!jacobi_check(build_double(f, fd).sc).pass) return *why = "Jacobi fails on the double", false;
  return true;
}

inline RunReport verify_bialgebras(const Corpus& c, const VerifyOptions& opt = {}) {
  using namespace verify_detail;
  return run_rows(2, c.from_table(EntryKind::Bialgebra, 2), opt, [&](const CorpusEntry& e, RowResult& row) {
    bool ok = true, printed_ok = true;
    bool check_printed = has_printed(e);
    Payload pv = printed_view(e);
    for (auto& b : bindings_for(c, e.names, opt)) {
      ++row.bindings;
      auto f = structure_of(c.definition(e.names[0]).data.brackets, b);
      std::string why;
      if (!bialgebra_holds(f, structure_of(e.data.brackets, b), &why)) {
        ok = false;
        row.details.push_back(why + " " + binding_text(b));
      }
      if (check_printed && !bialgebra_holds(f, structure_of(pv.brackets, b), &why)) {
        printed_ok = false;
        row.details.push_back("printed: " + why + " " + binding_text(b));
      }
    }
    settle(row, e, ok, check_printed ? std::optional<bool>(printed_ok) : std::nullopt);
  });
}

// ---------------------------------------------------------------- tables 3, 4: r-matrices

// r (with free symbols) solves delta(r) = fd over f, and its Schouten bracket is the printed one
inline bool r_side_holds(const StructureConstants& f, const StructureConstants& fd, const std::vector<RTerm>& r,
                         const std::optional<std::vector<STerm>>& printed_schouten, const std::vector<std::string>& free,
                         const ParamBinding& b, const std::string& side, std::vector<std::string>& details) {
  using namespace verify_detail;
  RSolutionSet sol = solve_coboundary(f, fd);
  if (sol.empty) {
    details.push_back(side + ": no solution of the coboundary equation " + binding_text(b));
    return false;
  }
  ParamBinding zero = b;
  for (auto& s : free) zero[s] = 0;
  RatMatrix r0 = r_matrix_of(r, zero);
  std::vector<RatMatrix> dirs;
  for (auto& s : free) {
    auto one = zero;
    one[s] = 1;
    dirs.push_back(r_matrix_of(r, one) - r0);
  }
  bool ok = true;
  if (!sol.contains_affine(r0, dirs)) {
    details.push_back(side + ": r is not a solution " + binding_text(b));
    ok = false;
  }
  if (printed_schouten) {
    for (auto& pt : free_points(free)) {
      auto full = merged(b, pt);
      RatMatrix rv = r_matrix_of(r, full);
      auto cl = classify_r(rv, f);
      if (!same(cl.schouten, wedge3_of(*printed_schouten, full))) {
        details.push_back(side + ": [[r,r]] = " + render_wedge3(cl.schouten) + ", printed " +
                          render_wedge3(wedge3_of(*printed_schouten, full)) + " " + binding_text(full));
        ok = false;
        break;
      }
    }
  }
  return ok;
}

inline RunReport verify_rmatrices(const Corpus& c, int table, const VerifyOptions& opt = {}) {
  using namespace verify_detail;
  return run_rows(table, c.from_table(EntryKind::RMatrix, table), opt, [&](const CorpusEntry& e, RowResult& row) {
    bool ok = true, printed_ok = true;
    bool check_printed = has_printed(e);
    Payload pv = printed_view(e);
    for (auto& b : bindings_for(c, e.names, opt)) {
      ++row.bindings;
      auto ps = pair_structures(c, e.names[0], e.names[1], b);
      auto side = [&](const Payload& p, std::vector<std::string>& d) {
        bool good = r_side_holds(ps.f, ps.fd, *p.r, p.schouten, e.free, b, "r", d);
        if (p.dual_r) good = r_side_holds(ps.fd, ps.f, *p.dual_r, p.dual_schouten, e.dual_free, b, "dual r", d) && good;
        return good;
      };
      if (!side(e.data, row.details)) ok = false;
      if (check_printed) {
        std::vector<std::string> d;
        if (!side(pv, d)) {
          printed_ok = false;
          for (auto& s : d) row.details.push_back("printed " + s);
        }
      }
    }
    settle(row, e, ok, check_printed ? std::optional<bool>(printed_ok) : std::nullopt);
  });
}

// ---------------------------------------------------------------- table 5: invariant frames

inline std::vector<ParamBinding> frame_bindings(const Corpus& c, const CorpusEntry& e, const VerifyOptions& opt) {
  auto bs = verify_detail::bindings_for(c, e.names, opt);
  if (opt.binding) return bs;
  // every parameter at 1 as well, when allowed
  auto ps = c.params_of(e.names);
  if (!ps.empty()) {
    ParamBinding one;
    for (auto& p : ps) one[p] = 1;
    try {
      c.check_binding(e.names, one);
      bs.push_back(one);
    } catch (const InputError&) {
    }
  }
  return bs;
}

inline RunReport verify_frames(const Corpus& c, const VerifyOptions& opt = {}) {
  using namespace verify_detail;
  RunReport rep = run_rows(5, c.from_table(EntryKind::Frame, 5), opt, [&](const CorpusEntry& e, RowResult& row) {
    bool check_printed = has_printed(e);
    Payload pv = printed_view(e);
    bool match = true, printed_match = true;
    auto compare = [&](const Payload& p, const InvariantFrame& fr, const ParamBinding& b, const std::string& tag) {
      bool good = true;
      for (auto [side, rows, M] : {std::tuple{"left", &p.left, &fr.XL}, std::tuple{"right", &p.right, &fr.XR}})
        for (auto& [i, ex] : *rows) {
          VectorField printed = expr_to_vf(ex, b);
          VectorField derived = frame_row(*M, i);
          if (printed != derived) {
            good = false;
            row.details.push_back(tag + side + " " + std::to_string(i + 1) + ": printed " + render_vf(printed) +
                                  ", derived " + render_vf(derived) + " " + binding_text(b));
          }
        }
      return good;
    };
    for (auto& b : frame_bindings(c, e, opt)) {
      ++row.bindings;
      auto fr = invariant_frame(c.structure(e.names[0], b));
      match = compare(e.data, fr, b, check_printed ? "corrected " : "") && match;
      if (check_printed) printed_match = compare(pv, fr, b, "as printed, ") && printed_match;
    }
    row.data_match = match;
    row.printed_match = check_printed ? printed_match : match;
    settle(row, e, match, check_printed ? std::optional<bool>(printed_match) : std::nullopt);
  });
  // bracket relations of the frames, for every algebra the corpus defines
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> names;
  for (auto* e : c.of_kind(EntryKind::Algebra)) names.push_back(e->names[0]);
  for (auto* e : c.of_kind(EntryKind::Bialgebra))
    if (std::find(names.begin(), names.end(), e->names[1]) == names.end()) names.push_back(e->names[1]);
  std::vector<RowResult> extra(names.size());
  parallel_for(names.size(), opt.jobs, [&](size_t k) {
    RowResult row;
    row.table = 5;
    row.anchor = "frame brackets";
    row.key = "brackets " + names[k];
    row.names = {names[k]};
    try {
      for (auto& b : bindings_for(c, {names[k]}, opt)) {
        ++row.bindings;
        auto f = c.structure(names[k], b);
        bool scaled = false;
        auto r = frame_bracket_check(f, &scaled);
        if (scaled && row.details.empty()) row.details.push_back("chart determinant is not a unit; checked in scaled form");
        if (!r.pass()) {
          row.status = RowStatus::Fail;
          for (auto& s : r.failures) row.details.push_back(s + " " + binding_text(b));
        }
      }
    } catch (const Error& ex) {
      row.status = RowStatus::Fail;
      row.details.push_back(std::string("error: ") + ex.what());
    }
    extra[k] = std::move(row);
  });
  for (auto& r : extra) rep.rows.push_back(std::move(r));
  rep.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// ---------------------------------------------------------------- tables 6, 7: Poisson brackets

struct DerivedPoisson {
  CFMatrix P;
  StructureConstants f, fd;
  InvariantFrame frame;
  std::optional<CFMatrix> cross;  // the other construction, when an r is known for the pair
};

// the r of a coboundary pair: listed on (g, d), or as the dual r of (d, g); zero when fd = 0
inline std::optional<RatMatrix> listed_r(const Corpus& c, const std::string& g, const std::string& d,
                                         const ParamBinding& b, const StructureConstants& fd) {
  for (auto* e : c.of_kind(EntryKind::RMatrix)) {
    if (e->names[0] == g && e->names[1] == d) {
      ParamBinding z = b;
      for (auto& s : e->free) z[s] = 0;
      return r_matrix_of(*e->data.r, z);
    }
    if (e->names[0] == d && e->names[1] == g && e->data.dual_r) {
      ParamBinding z = b;
      for (auto& s : e->dual_free) z[s] = 0;
      return r_matrix_of(*e->data.dual_r, z);
    }
  }
  if (fd.is_zero()) return RatMatrix(kCoords, kCoords);
  return std::nullopt;
}

inline DerivedPoisson derive_poisson(const Corpus& c, const std::string& g, const std::string& d, const ParamBinding& b,
                                     const std::string& method) {
  auto ps = verify_detail::pair_structures(c, g, d, b);
  DerivedPoisson out{CFMatrix(kCoords, kCoords), ps.f, ps.fd, invariant_frame(ps.f), std::nullopt};
  CFMatrix pi = pi_bivector(double_adjoint(ps.f, ps.fd), out.frame).P;
  std::optional<CFMatrix> sk;
  if (auto r = listed_r(c, g, d, b, ps.fd)) sk = sklyanin_bivector(out.frame, *r).P;
  if (method == "sklyanin") {
    if (!sk) throw InputError("no r-matrix listed for (" + g + ", " + d + ")");
    out.P = *sk;
    out.cross = pi;
  } else {
    out.P = pi;
    out.cross = sk;
  }
  return out;
}

// what the printed bracket itself satisfies, for the discrepancy record
inline std::string bracket_diagnostics(const CFMatrix& P, const StructureConstants& fd) {
  std::string s = "Poisson-Jacobi ";
  s += poisson_jacobi_check(P).pass ? "holds" : "fails";
  s += vanishes_at_origin(P) ? ", vanishes at e" : ", does not vanish at e";
  s += linearization_check(P, fd) ? ", linearizes to the dual bracket" : ", wrong linearization";
  return s;
}

inline RunReport verify_poisson(const Corpus& c, int table, const VerifyOptions& opt = {}) {
  using namespace verify_detail;
  return run_rows(table, c.from_table(EntryKind::Poisson, table), opt, [&](const CorpusEntry& e, RowResult& row) {
    bool check_printed = has_printed(e);
    Payload pv = printed_view(e);
    bool derived_ok = true, match = true, printed_match = true;
    for (auto& b : bindings_for(c, e.names, opt)) {
      ++row.bindings;
      auto dp = derive_poisson(c, e.names[0], e.names[1], b, e.method);
      auto bt = binding_text(b);
      auto pj = poisson_jacobi_check(dp.P);
      if (!pj.pass) {
        derived_ok = false;
        row.details.push_back("Poisson-Jacobi fails on the derived bivector " + bt);
      }
      std::string why;
      if (!linearization_check(dp.P, dp.fd, &why)) {
        derived_ok = false;
        row.details.push_back("linearization: " + why + " " + bt);
      }
      if (dp.cross && !(*dp.cross == dp.P)) {
        derived_ok = false;
        row.details.push_back("Sklyanin and adjoint-block brackets differ " + bt);
      }
      auto compare = [&](const Payload& p, const std::string& tag) {
        CFMatrix printed = pb_matrix(p.pb, b);
        auto diff = matrix_diff(dp.P, printed);
        for (auto& s : diff) row.details.push_back(tag + s + " " + bt);
        if (!diff.empty()) row.details.push_back(tag + "bracket: " + bracket_diagnostics(printed, dp.fd) + " " + bt);
        return diff.empty();
      };
      match = compare(e.data, check_printed ? "corrected " : "") && match;
      if (check_printed) printed_match = compare(pv, "as printed, ") && printed_match;
    }
    row.data_match = match;
    row.printed_match = check_printed ? printed_match : match;
    if (!derived_ok) {
      row.status = RowStatus::Fail;
      return;
    }
    settle(row, e, match, check_printed ? std::optional<bool>(printed_match) : std::nullopt);
  });
}

// ---------------------------------------------------------------- tables 8, 9: symplectic pairs

inline RunReport verify_symplectic(const Corpus& c, int table, const VerifyOptions& opt = {}) {
  using namespace verify_detail;
  auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.table = table;
  const CorpusEntry* m = nullptr;
  for (auto* e : c.of_kind(EntryKind::Membership))
    if (e->names[0] == "table" + std::to_string(table)) m = e;
  if (!m) return rep;
  rep.rows.resize(m->pairs.size());
  parallel_for(m->pairs.size(), opt.jobs, [&](size_t k) {
    auto [g, d] = m->pairs[k];
    RowResult row = start(table, *m);
    row.anchor = "Table " + std::to_string(table) + " pair " + std::to_string(k + 1);
    row.key = "(" + g + ", " + d + ")";
    row.names = {g, d};
    try {
      bool ok = true;
      std::vector<std::pair<std::string, std::string>> dirs{{g, d}};
      if (table == 8) dirs.push_back({d, g});
      for (auto& b : bindings_for(c, {g, d}, opt)) {
        ++row.bindings;
        for (auto& [x, y] : dirs) {
          auto ps = pair_structures(c, x, y, b);
          CFMatrix P = pi_bivector(double_adjoint(ps.f, ps.fd), invariant_frame(ps.f)).P;
          auto s = symplectic_classify(P, opt.seed, 1e-9);
          if (!s.symplectic) {
            ok = false;
            row.details.push_back("(" + x + ", " + y + ") degenerate, rank " + std::to_string(s.rank) + " " +
                                  binding_text(b));
          }
        }
      }
      row.status = ok ? RowStatus::Pass : RowStatus::Fail;
    } catch (const Error& ex) {
      row.status = RowStatus::Fail;
      row.details.push_back(std::string("error: ") + ex.what());
    }
    rep.rows[k] = std::move(row);
  });
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// ---------------------------------------------------------------- dispatch

inline RunReport verify_table(const Corpus& c, int table, const VerifyOptions& opt = {}) {
  switch (table) {
    case 1: return verify_algebras(c, opt);
    case 2: return verify_bialgebras(c, opt);
    case 3:
    case 4: return verify_rmatrices(c, table, opt);
    case 5: return verify_frames(c, opt);
    case 6:
    case 7: return verify_poisson(c, table, opt);
    case 8:
    case 9: return verify_symplectic(c, table, opt);
  }
  throw InputError("table must be 1..9 or all");
}

// ---------------------------------------------------------------- integrable fixtures

inline IntegrableExample example_from_fixture(const Corpus& c, const std::string& name) {
  const CorpusEntry* fx = nullptr;
  for (auto* e : c.of_kind(EntryKind::Fixture))
    if (e->names[0] == name) fx = e;
  if (!fx) throw InputError("no fixture '" + name + "'");
  std::map<std::string, std::string> kv(fx->properties.begin(), fx->properties.end());
  auto get = [&](const std::string& k) {
    auto it = kv.find(k);
    if (it == kv.end()) throw InputError("fixture " + name + " lacks '" + k + "'");
    return it->second;
  };
  IntegrableExample ex;
  ex.phase_space = get("phase");
  ex.symmetry_name = get("symmetry");
  ex.P = CFMatrix(kCoords, kCoords);
  for (size_t i = 0; i < kCoords; ++i)
    for (size_t j = i + 1; j < kCoords; ++j)
      if (auto it = kv.find("pb" + std::to_string(i + 1) + std::to_string(j + 1)); it != kv.end()) {
        ex.P(i, j) = parse_cf(it->second);
        ex.P(j, i) = -ex.P(i, j);
      }
  for (size_t i = 0; i < kCoords; ++i) ex.darboux[i] = parse_expr(get("y" + std::to_string(i + 1)));
  for (size_t i = 0; i < kCoords; ++i) ex.q[i] = detail::in_x(get("Q" + std::to_string(i + 1)), ex.darboux);
  ex.symmetry = c.structure(ex.symmetry_name);
  std::stringstream inv(get("involution"));
  for (std::string part; std::getline(inv, part, ';');) {
    std::stringstream ps(part);
    int a = 0, b = 0;
    if (!(ps >> a >> b)) throw InputError("fixture " + name + ": bad involution pair '" + part + "'");
    ex.invariant_pairs.push_back({a, b});
  }
  std::string nz = get("nonzero");
  ex.nonzero_coord = static_cast<size_t>(coordinate_index(nz, "x"));
  ex.id = name.back() - '0';
  return ex;
}

}  // namespace bialg

#endif  // BIALG_VERIFY_HPP
