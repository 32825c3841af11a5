// one line per acceptance criterion; exit 0 only when all hold
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "bialg/cf_random.hpp"
#include "bialg/verify.hpp"

using namespace bialg;

namespace {

struct Line {
  int id;
  bool ok;
  std::string text;
};

std::vector<Line> lines;

void report(int id, bool ok, const std::string& text) {
  lines.push_back({id, ok, text});
  std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", text.c_str());
  std::fflush(stdout);
}

std::string secs(double s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s << " s";
  return os.str();
}

std::string sci(double v) {
  std::ostringstream os;
  os.precision(1);
  os << std::scientific << v;
  return os.str();
}

struct Timed {
  RunReport rep;
  double seconds;
};

Timed run(const Corpus& c, int table) {
  auto t0 = std::chrono::steady_clock::now();
  VerifyOptions opt;
  opt.jobs = 1;
  auto rep = verify_table(c, table, opt);
  return {std::move(rep), std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
}

std::string tally(const RunReport& r) {
  return std::to_string(r.count(RowStatus::Pass)) + " pass, " + std::to_string(r.count(RowStatus::Flagged)) +
         " flagged, " + std::to_string(r.count(RowStatus::Fail)) + " fail";
}

void dump_failures(const RunReport& r) {
  for (auto& row : r.rows)
    if (row.status == RowStatus::Fail) {
      std::printf("    fail %s %s\n", row.anchor.c_str(), row.key.c_str());
      for (size_t i = 0; i < row.details.size() && i < 3; ++i) std::printf("      %s\n", row.details[i].c_str());
    }
}

const RowResult* find_row(const RunReport& r, const std::string& g, const std::string& d = "") {
  for (auto& row : r.rows) {
    if (row.anchor == "frame brackets") continue;
    if (row.names.empty() || row.names[0] != g) continue;
    if (d.empty() ? row.names.size() == 1 : (row.names.size() > 1 && row.names[1] == d)) return &row;
  }
  return nullptr;
}

// ---------------------------------------------------------------- property suites

bool round_trips(std::string& note) {
  std::mt19937 rng(29);
  int bad = 0;
  for (int t = 0; t < 200; ++t) {
    CF f = random_cf(rng);
    if (!(parse_cf(render(f)) == f)) ++bad;
  }
  note = "200 render/parse round trips, " + std::to_string(bad) + " mismatches";
  return bad == 0;
}

bool diff_vs_fd(std::string& note) {
  std::mt19937 rng(17);
  double worst = 0;
  for (int t = 0; t < 50; ++t) {
    CF f = random_cf(rng);
    for (size_t i = 0; i < kCoords; ++i) {
      CF d = f.diff(i);
      for (int p = 0; p < 10; ++p) {
        auto x = random_point(rng);
        double h = 1e-5;
        auto xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        double num = (f.eval(xp) - f.eval(xm)) / (2 * h), an = d.eval(x);
        worst = std::max(worst, std::abs(an - num) / (1 + std::abs(an)));
      }
    }
  }
  note = "cf_diff vs central differences, worst " + sci(worst);
  return worst < 1e-6;
}

bool exp_identity(const Corpus& c, std::string& note) {
  std::set<std::string> names;
  for (auto* e : c.of_kind(EntryKind::Algebra)) names.insert(e->names[0]);
  for (auto* e : c.of_kind(EntryKind::Bialgebra)) names.insert(e->names[1]);
  size_t checked = 0, bad = 0, unsupported = 0;
  for (auto& n : names)
    for (auto& b : c.grid({n})) {
      auto f = c.structure(n, b);
      for (size_t i = 0; i < kCoords; ++i) {
        RatMatrix m = adjoint_matrix(f, i);
        try {
          auto e = cf_matexp(m, i) * cf_matexp(Rational(-1) * m, i);
          ++checked;
          if (!(e == to_cf(RatMatrix::identity(kCoords)))) {
            ++bad;
            std::printf("    exp(M)exp(-M) != I for ad X%zu of %s %s\n", i + 1, n.c_str(), binding_text(b).c_str());
          }
        } catch (const UnsupportedSpectrum& ex) {
          ++unsupported;
          std::printf("    unsupported spectrum: ad X%zu of %s %s\n", i + 1, n.c_str(), binding_text(b).c_str());
        }
      }
    }
  note = "exp(M)exp(-M) = I on " + std::to_string(checked) + " adjoints of " + std::to_string(names.size()) +
         " algebras, " + std::to_string(bad) + " wrong, " + std::to_string(unsupported) + " unsupported";
  return bad == 0 && unsupported == 0 && checked > 0;
}

}  // namespace

int main(int argc, char** argv) {
  auto t_all = std::chrono::steady_clock::now();
  Corpus c = argc > 1 ? Corpus::load(argv[1]) : Corpus::load_default();
  c.validate();

  std::map<int, Timed> t;
  double verify_total = 0;
  for (int k = 1; k <= 9; ++k) {
    t.emplace(k, run(c, k));
    verify_total += t.at(k).seconds;
  }

  // 1
  {
    auto& r = t.at(1);
    bool ok = r.rep.rows.size() == 20 && r.rep.count(RowStatus::Pass) == 20 && r.seconds < 5;
    report(1, ok, "Table 1: " + std::to_string(r.rep.rows.size()) + " rows, " + tally(r.rep) + ", " + secs(r.seconds));
    if (!ok) dump_failures(r.rep);
  }

  // 2
  {
    auto& r = t.at(2);
    bool ok = !r.rep.rows.empty() && r.rep.ok() && r.seconds < 10;
    report(2, ok, "Table 2: " + std::to_string(r.rep.rows.size()) + " bialgebras at grid bindings, " + tally(r.rep) +
                      ", " + secs(r.seconds));
    if (!ok) dump_failures(r.rep);
  }

  // 3
  {
    auto& a = t.at(3);
    auto& b = t.at(4);
    size_t missing_dual = 0;
    for (auto* e : c.from_table(EntryKind::RMatrix, 3)) missing_dual += !e->data.dual_r;
    double s = a.seconds + b.seconds;
    bool ok = !a.rep.rows.empty() && !b.rep.rows.empty() && a.rep.ok() && b.rep.ok() && missing_dual == 0 && s < 10;
    report(3, ok, "Table 3: " + tally(a.rep) + "; Table 4: " + tally(b.rep) + "; Table 3 rows without dual r: " +
                      std::to_string(missing_dual) + ", " + secs(s));
    if (!ok) {
      dump_failures(a.rep);
      dump_failures(b.rep);
    }
  }

  // 4
  {
    auto& r = t.at(5);
    const std::vector<std::string> spot = {"A_4_1", "A_4_2_-1", "A_4_7", "A_4_9_0",
                                           "A_4_11_b", "VI0+R", "VII0+R", "A_4_12"};
    bool spot_ok = true;
    std::string missed;
    for (auto& n : spot) {
      auto* row = find_row(r.rep, n);
      if (!row || row->status == RowStatus::Fail || !row->data_match) {
        spot_ok = false;
        missed += " " + n;
      }
    }
    size_t bracket_rows = 0, bracket_bad = 0, data_rows = 0;
    for (auto& row : r.rep.rows) {
      if (row.anchor == "frame brackets") {
        ++bracket_rows;
        bracket_bad += row.status == RowStatus::Fail;
      } else {
        ++data_rows;
      }
    }
    bool ok = spot_ok && r.rep.ok() && bracket_rows > 0 && bracket_bad == 0;
    report(4, ok, "Table 5: spot set " + std::string(spot_ok ? "matches" : "misses" + missed) + "; " +
                      std::to_string(data_rows) + " frame rows and " + std::to_string(bracket_rows) +
                      " bracket checks, " + tally(r.rep));
    if (auto* row = find_row(r.rep, "A_4_11_b"); row && !row->printed_match)
      std::printf("    note: A_4_11_b matches after the flagged correction of its right 4 row; the printed form differs\n");
    if (!ok) dump_failures(r.rep);
  }

  // 5
  {
    auto& a = t.at(6);
    auto& b = t.at(7);
    struct Want {
      const RunReport* rep;
      std::string g, d;
    };
    std::vector<Want> named = {{&a.rep, "A_4_7", "A_4_7.i"},
                               {&a.rep, "A_4_9_-1/2", "A_4_9_1.ii"},
                               {&b.rep, "A_4_1", "A_4_1.i"},
                               {&b.rep, "A_4_3", "A2+A2.i"}};
    bool named_ok = true;
    std::string missed;
    for (auto& w : named) {
      auto* row = find_row(*w.rep, w.g, w.d);
      if (!row || row->status != RowStatus::Pass) {
        named_ok = false;
        missed += " (" + w.g + ", " + w.d + ")";
      }
    }
    size_t exact = a.rep.count(RowStatus::Pass) + b.rep.count(RowStatus::Pass);
    bool ok = named_ok && exact >= 20 && a.rep.ok() && b.rep.ok();
    report(5, ok, "Tables 6-7: " + std::to_string(exact) + " rows match as printed, designated rows " +
                      (named_ok ? "match" : "miss" + missed) + "; Table 6: " + tally(a.rep) + "; Table 7: " +
                      tally(b.rep));
    if (!ok) {
      dump_failures(a.rep);
      dump_failures(b.rep);
    }
  }

  // 6
  {
    auto& a = t.at(8);
    auto& b = t.at(9);
    bool ok = !a.rep.rows.empty() && !b.rep.rows.empty() && a.rep.ok() && b.rep.ok();
    report(6, ok, "Table 8: " + std::to_string(a.rep.rows.size()) + " pairs both ways, " + tally(a.rep) +
                      "; Table 9: " + std::to_string(b.rep.rows.size()) + " pairs, " + tally(b.rep));
    if (!ok) {
      dump_failures(a.rep);
      dump_failures(b.rep);
    }
  }

  // 7
  {
    bool ok = true;
    std::string text;
    for (int id : {1, 2}) {
      std::string name = "example" + std::to_string(id);
      try {
        auto ex = example_from_fixture(c, name);
        auto d = darboux_check(ex, 20, 0, 1e-10);
        auto q = closure_check(ex, 20, 0, 1e-10);
        auto fl = flow_conserve(ex, 1, 1.0, 1e-3, {1.0, 0.5, 1.0 / 3.0, 0.25});
        bool good = d.pass && q.pass && !fl.exploded && fl.drift[0] < 1e-6;
        ok = ok && good;
        text += (id == 1 ? "" : "; ") + name + ": Darboux " + sci(d.worst) + ", closure " + sci(q.worst) +
                ", Q1 drift " + sci(fl.drift[0]);
      } catch (const Error& e) {
        ok = false;
        text += (id == 1 ? "" : "; ") + name + ": error " + e.what();
      }
    }
    report(7, ok, text);
  }

  // 8
  {
    std::string n1, n2, n3;
    bool a = round_trips(n1), b = diff_vs_fd(n2), d = exp_identity(c, n3);
    report(8, a && b && d, n1 + "; " + n2 + "; " + n3);
  }

  // 9
  {
    bool ok = verify_total < 60;
    report(9, ok, "verify of all tables, single thread: " + secs(verify_total));
  }

  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_all).count();
  size_t passed = 0;
  for (auto& l : lines) passed += l.ok;
  std::printf("%zu/%zu criteria pass (%s)\n", passed, lines.size(), secs(wall).c_str());
  return passed == lines.size() ? 0 : 1;
}
