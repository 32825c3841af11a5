#ifndef BIALG_INTEGRABLE_HPP
#define BIALG_INTEGRABLE_HPP

#include <array>
#include <cmath>
#include <map>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "cf_text.hpp"
#include "poisson.hpp"

namespace bialg {

// ---------------------------------------------------------------- numeric expressions

inline double eval_num(const ExprPtr& e, const Point4& x) {
  using Op = Expr::Op;
  switch (e->op) {
    case Op::Num: return to_double(e->num);
    case Op::Sym: {
      int i = coordinate_index(e->name, "x");
      if (i < 0) throw InputError("unbound symbol '" + e->name + "'");
      return x[static_cast<size_t>(i)];
    }
    case Op::Neg: return -eval_num(e->a, x);
    case Op::Add: return eval_num(e->a, x) + eval_num(e->b, x);
    case Op::Sub: return eval_num(e->a, x) - eval_num(e->b, x);
    case Op::Mul: return eval_num(e->a, x) * eval_num(e->b, x);
    case Op::Div: {
      double d = eval_num(e->b, x);
      if (d == 0 || !std::isfinite(d)) throw EvalError("division by zero");
      return eval_num(e->a, x) / d;
    }
    case Op::Pow: {
      Rational ex = eval_rational(e->b);
      if (ex.get_den() != 1) throw InputError("non-integer exponent");
      double b = eval_num(e->a, x);
      long n = ex.get_num().get_si();
      if (n < 0 && b == 0) throw EvalError("division by zero");
      return std::pow(b, static_cast<double>(n));
    }
    case Op::Call: {
      double a = eval_num(e->a, x);
      if (e->name == "exp") return std::exp(a);
      if (e->name == "sin") return std::sin(a);
      if (e->name == "cos") return std::cos(a);
      if (e->name == "sinh") return std::sinh(a);
      if (e->name == "cosh") return std::cosh(a);
      throw InputError("unknown function '" + e->name + "'");
    }
  }
  throw InputError("bad expression");
}

// d/dx_k, closed over the node set
inline ExprPtr diff_expr(const ExprPtr& e, size_t k) {
  using Op = Expr::Op;
  using namespace expr;
  switch (e->op) {
    case Op::Num: return num(0);
    case Op::Sym: return num(coordinate_index(e->name, "x") == static_cast<int>(k) ? 1 : 0);
    case Op::Neg: return neg(diff_expr(e->a, k));
    case Op::Add: return add(diff_expr(e->a, k), diff_expr(e->b, k));
    case Op::Sub: return sub(diff_expr(e->a, k), diff_expr(e->b, k));
    case Op::Mul: return add(mul(diff_expr(e->a, k), e->b), mul(e->a, diff_expr(e->b, k)));
    case Op::Div: {
      // (a/b)' = a'/b - a b'/b^2
      auto da = diff_expr(e->a, k), db = diff_expr(e->b, k);
      return sub(div(da, e->b), div(mul(e->a, db), pow(e->b, 2)));
    }
    case Op::Pow: {
      long n = eval_rational(e->b).get_num().get_si();
      return mul(mul(num(n), pow(e->a, n - 1)), diff_expr(e->a, k));
    }
    case Op::Call: {
      auto da = diff_expr(e->a, k);
      if (is_num(da, 0)) return num(0);
      ExprPtr outer;
      if (e->name == "exp") outer = e;
      else if (e->name == "sin") outer = call("cos", e->a);
      else if (e->name == "cos") outer = neg(call("sin", e->a));
      else if (e->name == "sinh") outer = call("cosh", e->a);
      else if (e->name == "cosh") outer = call("sinh", e->a);
      else throw InputError("unknown function '" + e->name + "'");
      return mul(outer, da);
    }
  }
  throw InputError("bad expression");
}

// F with its gradient, differentiated once
struct DiffFunction {
  ExprPtr f;
  std::array<ExprPtr, kCoords> grad;

  DiffFunction() = default;
  explicit DiffFunction(ExprPtr e) : f(std::move(e)) {
    for (size_t k = 0; k < kCoords; ++k) grad[k] = diff_expr(f, k);
  }
  double operator()(const Point4& x) const { return eval_num(f, x); }
  std::array<double, kCoords> gradient(const Point4& x) const {
    std::array<double, kCoords> g;
    for (size_t k = 0; k < kCoords; ++k) g[k] = eval_num(grad[k], x);
    return g;
  }
};

// {F,G} = P^{ij} d_i F d_j G
inline double bracket_of(const CFMatrix& P, const DiffFunction& F, const DiffFunction& G, const Point4& x) {
  auto gf = F.gradient(x), gg = G.gradient(x);
  Eigen::Matrix4d p = eval_matrix(P, x);
  double s = 0;
  for (size_t i = 0; i < kCoords; ++i)
    for (size_t j = 0; j < kCoords; ++j) s += p(i, j) * gf[i] * gg[j];
  if (!std::isfinite(s)) throw EvalError("bracket is not finite");
  return s;
}

// ---------------------------------------------------------------- examples

struct IntegrableExample {
  int id = 0;
  std::string phase_space, symmetry_name;
  CFMatrix P;
  std::array<ExprPtr, kCoords> darboux;  // y1..y4 in x
  std::array<ExprPtr, kCoords> q;        // Q1..Q4 in x
  StructureConstants symmetry;
  std::vector<std::pair<int, int>> invariant_pairs;  // 1-based
  size_t nonzero_coord = 0;                          // samples avoid |x_c| < 0.1
  std::vector<std::string> notes;
};

namespace detail {

inline CFMatrix bivector_from(const std::vector<std::tuple<int, int, std::string>>& br) {
  CFMatrix P(kCoords, kCoords);
  for (auto& [i, j, s] : br) {
    P(i - 1, j - 1) = parse_cf(s);
    P(j - 1, i - 1) = -P(i - 1, j - 1);
  }
  return P;
}

inline StructureConstants constants_from(const std::vector<std::tuple<int, int, int, Rational>>& br) {
  StructureConstants f(kCoords);
  for (auto& [i, j, k, c] : br) f.set_bracket(i - 1, j - 1, k - 1, c);
  return f;
}

// Q given in y1..y4, composed with the Darboux map
inline ExprPtr in_x(const std::string& qtext, const std::array<ExprPtr, kCoords>& y) {
  std::map<std::string, ExprPtr> sub;
  for (size_t i = 0; i < kCoords; ++i) sub["y" + std::to_string(i + 1)] = y[i];
  return substitute(parse_expr(qtext), sub);
}

}  // namespace detail

inline IntegrableExample integrable_example(int id) {
  IntegrableExample ex;
  ex.id = id;
  std::array<std::string, kCoords> ys, qs;
  if (id == 1) {
    ex.phase_space = "A49^-1/2";
    ex.symmetry_name = "A49^1.ii";
    ex.P = detail::bivector_from({{1, 2, "-2*x2^2"},
                                  {1, 3, "-x1 + x2*x3"},
                                  {1, 4, "2*x2"},
                                  {2, 3, "-2*x2"},
                                  {3, 4, "-2 + 2*exp(x4/2)"}});
    ys = {"x2", "exp(-x4)*(x1 + x2*x3)/x2", "exp(-x4/2)*(-x1 + exp(x4/2)*x1 - x2*x3)/(2*x2^2)", "exp(x4/2)"};
    qs = {"-y4", "-y3/2", "2*y1*y3 + y2*y4", "-y2*y3"};
    ex.symmetry = detail::constants_from({{1, 3, 1, -1}, {1, 4, 2, 2}, {2, 3, 2, -2}, {3, 4, 4, 1}});
    ex.invariant_pairs = {{1, 2}, {2, 4}};
    ex.nonzero_coord = 1;
  } else if (id == 2) {
    ex.phase_space = "A49^1.ii";
    ex.symmetry_name = "A49^-1/2";
    ex.P = detail::bivector_from({{1, 2, "-x1^2"},
                                  {1, 4, "exp(-x3)*x1/2"},
                                  {2, 3, "x1"},
                                  {2, 4, "exp(-x3)*x2"},
                                  {3, 4, "-(1 - exp(-x3))/2"}});
    // y2 numerator carries x2; the x3 spelling fails {y2,y4} = 1
    ys = {"x1", "-(2*exp(x3)*x1*x4 + x2)/x1", "(-x2 + exp(-x3)*x2 + 2*x1*x4)/x1^2", "exp(-x3)"};
    qs = {"-y3", "-y4", "-y2*y3", "-y1*y3/2 - y2*y4"};
    ex.symmetry = detail::constants_from(
        {{1, 4, 1, rat(1, 2)}, {2, 3, 1, 1}, {2, 4, 2, 1}, {3, 4, 3, rat(-1, 2)}});
    ex.invariant_pairs = {{1, 2}, {1, 3}};
    ex.nonzero_coord = 0;
    ex.notes = {"y2: numerator term x3 read as x2 (Darboux brackets fail otherwise)",
                "Q3, Q4: taken from their y-forms; the expanded Q4 (coefficient 1 on exp(-x3)*x2/x1) breaks closure, "
                "the y-form gives 1/2"};
  } else {
    throw InputError("integrable example must be 1 or 2");
  }
  for (size_t i = 0; i < kCoords; ++i) ex.darboux[i] = parse_expr(ys[i]);
  for (size_t i = 0; i < kCoords; ++i) ex.q[i] = detail::in_x(qs[i], ex.darboux);
  return ex;
}

// uniform on [-1,1]^4, rejecting |x_c| < 0.1
inline std::vector<Point4> sample_points(const IntegrableExample& ex, size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Point4> out;
  while (out.size() < n) {
    Point4 x{u(rng), u(rng), u(rng), u(rng)};
    if (std::abs(x[ex.nonzero_coord]) < 0.1) continue;
    out.push_back(x);
  }
  return out;
}

struct ResidualTable {
  bool pass = true;
  double worst = 0;
  // (i,j) 0-based with i<j, worst residual over the samples
  std::vector<std::tuple<size_t, size_t, double>> rows;
};

// {y_i,y_j} against the canonical form {y1,y3} = {y2,y4} = 1
inline ResidualTable darboux_check(const IntegrableExample& ex, size_t n = 20, unsigned seed = 0, double tol = 1e-10) {
  std::array<DiffFunction, kCoords> y;
  for (size_t i = 0; i < kCoords; ++i) y[i] = DiffFunction(ex.darboux[i]);
  auto pts = sample_points(ex, n, seed);
  ResidualTable t;
  for (size_t i = 0; i < kCoords; ++i)
    for (size_t j = i + 1; j < kCoords; ++j) {
      double expect = (j == i + 2 && i < 2) ? 1 : 0, w = 0;
      for (auto& p : pts) w = std::max(w, std::abs(bracket_of(ex.P, y[i], y[j], p) - expect));
      t.rows.emplace_back(i, j, w);
      t.worst = std::max(t.worst, w);
    }
  t.pass = t.worst < tol;
  return t;
}

// {Q_i,Q_j} = f_ij^k Q_k, residual scaled by 1 + max|Q|
inline ResidualTable closure_check(const IntegrableExample& ex, size_t n = 20, unsigned seed = 0, double tol = 1e-10) {
  std::array<DiffFunction, kCoords> Q;
  for (size_t i = 0; i < kCoords; ++i) Q[i] = DiffFunction(ex.q[i]);
  auto pts = sample_points(ex, n, seed);
  ResidualTable t;
  for (size_t i = 0; i < kCoords; ++i)
    for (size_t j = i + 1; j < kCoords; ++j) {
      double w = 0;
      for (auto& p : pts) {
        std::array<double, kCoords> qv;
        double scale = 0;
        for (size_t k = 0; k < kCoords; ++k) {
          qv[k] = Q[k](p);
          scale = std::max(scale, std::abs(qv[k]));
        }
        double rhs = 0;
        for (size_t k = 0; k < kCoords; ++k) rhs += to_double(ex.symmetry(i, j, k)) * qv[k];
        w = std::max(w, std::abs(bracket_of(ex.P, Q[i], Q[j], p) - rhs) / (1 + scale));
      }
      t.rows.emplace_back(i, j, w);
      t.worst = std::max(t.worst, w);
    }
  t.pass = t.worst < tol;
  return t;
}

struct FlowSample {
  double t;
  Point4 x;
  std::array<double, kCoords> q;
};

struct FlowReport {
  std::vector<size_t> conserved;               // Q indices with {Q,H} = 0 identically
  std::array<double, kCoords> drift{};         // max relative drift over the run
  bool exploded = false;
  double min_guard = 0;         // smallest |x_c| met, c the example's singular coordinate
  bool near_singular = false;   // min_guard below 1e-6
  std::vector<FlowSample> trajectory;
};

// x' = P grad H by classical RK4 with fixed step
inline FlowReport flow_conserve(const IntegrableExample& ex, size_t h, double T, double dt, const Point4& x0,
                                bool record = false) {
  if (h >= kCoords) throw InputError("flow_conserve: Hamiltonian index out of range");
  FlowReport rep;
  for (size_t k = 0; k < kCoords; ++k) {
    bool zero = true;
    for (size_t m = 0; m < kCoords; ++m) zero = zero && sgn(ex.symmetry(k, h, m)) == 0;
    if (zero && k != h) rep.conserved.push_back(k);
  }
  std::array<DiffFunction, kCoords> Q;
  for (size_t i = 0; i < kCoords; ++i) Q[i] = DiffFunction(ex.q[i]);
  auto field = [&](const Point4& x) {
    auto g = Q[h].gradient(x);
    Eigen::Matrix4d p = eval_matrix(ex.P, x);
    Point4 v{};
    for (size_t i = 0; i < kCoords; ++i)
      for (size_t j = 0; j < kCoords; ++j) v[i] += p(i, j) * g[j];
    return v;
  };
  auto axpy = [](const Point4& x, double a, const Point4& v) {
    Point4 r;
    for (size_t i = 0; i < kCoords; ++i) r[i] = x[i] + a * v[i];
    return r;
  };
  std::array<double, kCoords> q0;
  for (size_t k = 0; k < kCoords; ++k) q0[k] = Q[k](x0);
  rep.min_guard = std::abs(x0[ex.nonzero_coord]);
  auto sample = [&](double t, const Point4& x) {
    rep.min_guard = std::min(rep.min_guard, std::abs(x[ex.nonzero_coord]));
    std::array<double, kCoords> qv;
    for (size_t k = 0; k < kCoords; ++k) {
      qv[k] = Q[k](x);
      rep.drift[k] = std::max(rep.drift[k], std::abs(qv[k] - q0[k]) / std::max(std::abs(q0[k]), 1e-300));
    }
    if (record) rep.trajectory.push_back({t, x, qv});
  };
  Point4 x = x0;
  sample(0, x);
  long steps = T <= 0 ? 0 : static_cast<long>(std::llround(T / dt));
  try {
    for (long s = 0; s < steps; ++s) {
      Point4 k1 = field(x), k2 = field(axpy(x, dt / 2, k1)), k3 = field(axpy(x, dt / 2, k2)), k4 = field(axpy(x, dt, k3));
      for (size_t i = 0; i < kCoords; ++i) x[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
      for (double v : x)
        if (!std::isfinite(v)) throw EvalError("trajectory left the domain");
      sample((s + 1) * dt, x);
    }
  } catch (const EvalError&) {
    rep.exploded = true;
  }
  rep.near_singular = rep.min_guard < 1e-6;
  return rep;
}

inline void write_trajectory_csv(std::ostream& os, const FlowReport& rep) {
  os << "t,x1,x2,x3,x4,Q1,Q2,Q3,Q4\n";
  os.precision(17);
  for (auto& s : rep.trajectory) {
    os << s.t;
    for (double v : s.x) os << ',' << v;
    for (double v : s.q) os << ',' << v;
    os << '\n';
  }
}

}  // namespace bialg

#endif  // BIALG_INTEGRABLE_HPP
