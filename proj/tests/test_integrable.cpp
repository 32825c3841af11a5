#include <gtest/gtest.h>

#include <sstream>

#include "bialg/integrable.hpp"

using namespace bialg;

namespace {

DiffFunction fn(const std::string& s) { return DiffFunction(parse_expr(s)); }

double central(const DiffFunction& f, Point4 x, size_t k, double h = 1e-5) {
  Point4 a = x, b = x;
  a[k] += h;
  b[k] -= h;
  return (f(a) - f(b)) / (2 * h);
}

}  // namespace

TEST(NumericExpr, EvalMatchesLibm) {
  Point4 x{0.3, -0.7, 1.1, 0.25};
  EXPECT_DOUBLE_EQ(fn("x1^3 - 2*x2/x3")(x), std::pow(0.3, 3) - 2 * -0.7 / 1.1);
  EXPECT_DOUBLE_EQ(fn("sin(x1)*cosh(x4) + cos(x2) - sinh(x3)")(x),
                   std::sin(0.3) * std::cosh(0.25) + std::cos(-0.7) - std::sinh(1.1));
  EXPECT_DOUBLE_EQ(fn("exp(-x4/2)")(x), std::exp(-0.125));
  EXPECT_DOUBLE_EQ(fn("x2^-2")(x), 1 / (0.49));
}

TEST(NumericExpr, SingularPointThrows) {
  EXPECT_THROW(fn("1/x2")(Point4{1, 0, 0, 0}), EvalError);
  EXPECT_THROW(fn("x1^-1")(Point4{0, 1, 1, 1}), EvalError);
}

TEST(NumericExpr, DerivativeMatchesFiniteDifference) {
  std::vector<std::string> fs = {"x1^3*x2 - x3/x4",
                                 "exp(-x4/2)*(x1 + x2*x3)/(2*x2^2)",
                                 "sin(x1*x2) + cos(x3)*sinh(x4) - cosh(x1 - x4)",
                                 "(x1^2 + 1)^-3 * x4",
                                 "-(2*exp(x3)*x1*x4 + x2)/x1"};
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.3, 1.2);
  for (auto& s : fs) {
    auto f = fn(s);
    for (int t = 0; t < 20; ++t) {
      Point4 x{u(rng), u(rng), u(rng), u(rng)};
      auto g = f.gradient(x);
      for (size_t k = 0; k < 4; ++k) EXPECT_NEAR(g[k], central(f, x, k), 1e-6 * (1 + std::abs(g[k]))) << s;
    }
  }
}

TEST(BracketOf, CoordinatesReproduceP) {
  auto ex = integrable_example(1);
  for (auto& p : sample_points(ex, 5, 1))
    for (size_t i = 0; i < 4; ++i)
      for (size_t j = 0; j < 4; ++j)
        EXPECT_NEAR(bracket_of(ex.P, fn("x" + std::to_string(i + 1)), fn("x" + std::to_string(j + 1)), p),
                    ex.P(i, j).eval(p), 1e-14);
}

TEST(BracketOf, AntisymmetryAndLeibniz) {
  auto ex = integrable_example(2);
  auto F = fn("x1*x4 + exp(-x3)"), G = fn("x2/x1"), H = fn("sin(x4)*x3");
  auto GH = DiffFunction(parse_expr("(x2/x1)*(sin(x4)*x3)"));
  for (auto& p : sample_points(ex, 20, 2)) {
    EXPECT_NEAR(bracket_of(ex.P, F, G, p), -bracket_of(ex.P, G, F, p), 1e-12);
    double l = bracket_of(ex.P, F, GH, p), r = G(p) * bracket_of(ex.P, F, H, p) + H(p) * bracket_of(ex.P, F, G, p);
    EXPECT_LT(std::abs(l - r), 1e-10 * (1 + std::abs(l)));
  }
}

TEST(Examples, PhaseSpaceBivectorsArePoisson) {
  for (int id : {1, 2}) {
    auto ex = integrable_example(id);
    EXPECT_TRUE(poisson_jacobi_check(ex.P).pass) << id;
  }
}

TEST(Examples, SamplesAvoidSingularLocus) {
  auto e1 = integrable_example(1), e2 = integrable_example(2);
  for (auto& p : sample_points(e1, 200, 4)) EXPECT_GE(std::abs(p[1]), 0.1);
  for (auto& p : sample_points(e2, 200, 4)) EXPECT_GE(std::abs(p[0]), 0.1);
  EXPECT_EQ(sample_points(e1, 20, 9)[7], sample_points(e1, 20, 9)[7]);
}

TEST(Example1, DarbouxCanonical) {
  auto t = darboux_check(integrable_example(1));
  EXPECT_TRUE(t.pass) << t.worst;
}

TEST(Example1, PrintedExpandedQsAgree) {
  auto ex = integrable_example(1);
  auto q3 = fn("x1/x2");
  auto q4 = fn("exp(-3*x4/2)*x1^2/(2*x2^3) - exp(-x4)*x1^2/(2*x2^3) + exp(-3*x4/2)*x1*x3/x2^2"
               " - exp(-x4)*x1*x3/(2*x2^2) + exp(-3*x4/2)*x3^2/(2*x2)");
  auto q1 = fn("-exp(x4/2)");
  for (auto& p : sample_points(ex, 20, 5)) {
    EXPECT_NEAR(eval_num(ex.q[0], p), q1(p), 1e-12);
    EXPECT_NEAR(eval_num(ex.q[2], p), q3(p), 1e-9 * (1 + std::abs(q3(p))));
    EXPECT_NEAR(eval_num(ex.q[3], p), q4(p), 1e-9 * (1 + std::abs(q4(p))));
  }
}

TEST(Example1, Q1Q3IsMinusQ1) {
  auto ex = integrable_example(1);
  DiffFunction Q1(ex.q[0]), Q3(ex.q[2]);
  for (auto& p : sample_points(ex, 20, 6)) EXPECT_NEAR(bracket_of(ex.P, Q1, Q3, p), -Q1(p), 1e-10 * (1 + std::abs(Q1(p))));
}

TEST(Example1, ClosesOnSymmetryConstants) {
  auto t = closure_check(integrable_example(1));
  EXPECT_TRUE(t.pass) << t.worst;
  EXPECT_EQ(t.rows.size(), 6u);
}

TEST(Example1, ConstantShiftsAndClosure) {
  // Q3 never appears on a right-hand side, so a shift of Q3 keeps closure; Q2 does appear
  auto ex = integrable_example(1);
  ex.q[2] = expr::add(ex.q[2], expr::num(1));
  EXPECT_TRUE(closure_check(ex).pass);
  ex = integrable_example(1);
  ex.q[1] = expr::add(ex.q[1], expr::num(1));
  EXPECT_FALSE(closure_check(ex).pass);
}

TEST(Example2, DarbouxCanonical) {
  auto t = darboux_check(integrable_example(2));
  EXPECT_TRUE(t.pass) << t.worst;
}

TEST(Example2, PrintedY2SpellingFailsDarboux) {
  auto ex = integrable_example(2);
  ex.darboux[1] = parse_expr("-(2*exp(x3)*x1*x4 + x3)/x1");
  EXPECT_FALSE(darboux_check(ex).pass);
}

TEST(Example2, ClosesOnSymmetryConstants) {
  auto t = closure_check(integrable_example(2));
  EXPECT_TRUE(t.pass) << t.worst;
}

TEST(Example2, ExpandedQ4AsPrintedBreaksClosure) {
  auto ex = integrable_example(2);
  ex.q[3] = parse_expr("x2/(2*x1) + exp(-x3)*x2/x1 + x4");
  EXPECT_FALSE(closure_check(ex).pass);
  ex.q[3] = parse_expr("x2/(2*x1) + exp(-x3)*x2/(2*x1) + x4");
  EXPECT_TRUE(closure_check(ex).pass);
}

TEST(Flow, ZeroDurationZeroDrift) {
  auto ex = integrable_example(1);
  for (size_t h = 0; h < 4; ++h) {
    auto r = flow_conserve(ex, h, 0, 1e-3, Point4{1, 0.5, 1.0 / 3, 0.25});
    for (double d : r.drift) EXPECT_EQ(d, 0);
  }
}

TEST(Flow, Example1HamiltonianQ2) {
  auto ex = integrable_example(1);
  auto r = flow_conserve(ex, 1, 1, 1e-3, Point4{1, 0.5, 1.0 / 3, 0.25});
  EXPECT_FALSE(r.exploded);
  EXPECT_EQ(r.conserved, (std::vector<size_t>{0, 3}));
  EXPECT_LT(r.drift[0], 1e-6);
  // x2 = (1 - t)/2 along this flow, so the run ends on the x2 = 0 locus
  EXPECT_TRUE(r.near_singular);
  auto s = flow_conserve(ex, 1, 0.9, 1e-3, Point4{1, 0.5, 1.0 / 3, 0.25});
  EXPECT_FALSE(s.near_singular);
  EXPECT_LT(s.drift[0], 1e-6);
  EXPECT_LT(s.drift[1], 1e-6);  // the energy itself
  EXPECT_LT(s.drift[3], 1e-6);
}

TEST(Flow, Example2HamiltonianQ2) {
  auto ex = integrable_example(2);
  auto r = flow_conserve(ex, 1, 1, 1e-3, Point4{1, 0.5, 1.0 / 3, 0.25});
  EXPECT_FALSE(r.exploded);
  EXPECT_EQ(r.conserved, (std::vector<size_t>{0}));
  EXPECT_LT(r.drift[0], 1e-6);
}

TEST(Flow, NonConservedQuantityMoves) {
  // Q3 does not commute with Q2 in Example 1, so it must drift
  auto ex = integrable_example(1);
  auto r = flow_conserve(ex, 1, 1, 1e-3, Point4{1, 0.5, 1.0 / 3, 0.25});
  EXPECT_GT(r.drift[2], 1e-3);
}

TEST(Flow, CsvDump) {
  auto ex = integrable_example(1);
  auto r = flow_conserve(ex, 1, 0.01, 1e-3, Point4{1, 0.5, 1.0 / 3, 0.25}, true);
  EXPECT_EQ(r.trajectory.size(), 11u);
  std::ostringstream os;
  write_trajectory_csv(os, r);
  std::string s = os.str();
  EXPECT_EQ(s.substr(0, s.find('\n')), "t,x1,x2,x3,x4,Q1,Q2,Q3,Q4");
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 12);
}
