#ifndef BIALG_CF_TEXT_HPP
#define BIALG_CF_TEXT_HPP

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <vector>

#include "closed_function.hpp"
#include "expr.hpp"

namespace bialg {

namespace detail {

// One real summand: coef * x^k * exp(alpha.x) * {1 | cos(beta.x) | sin(beta.x)}
struct RealTerm {
  std::array<unsigned, kCoords> k{};
  std::array<Rational, kCoords> alpha{}, beta{};
  int kind = 0;  // 0 none, 1 cos, 2 sin
  Rational coef;
};

inline bool has_rate(const RealTerm& t) {
  for (size_t i = 0; i < kCoords; ++i)
    if (sgn(t.alpha[i]) != 0 || sgn(t.beta[i]) != 0) return true;
  return false;
}

inline bool real_term_less(const RealTerm& a, const RealTerm& b) {
  bool ra = has_rate(a), rb = has_rate(b);
  if (ra != rb) return !ra;
  for (size_t i = 0; i < kCoords; ++i)
    if (a.alpha[i] != b.alpha[i]) return a.alpha[i] < b.alpha[i];
  for (size_t i = 0; i < kCoords; ++i)
    if (a.beta[i] != b.beta[i]) return a.beta[i] < b.beta[i];
  if (a.kind != b.kind) return a.kind < b.kind;
  unsigned da = 0, db = 0;
  for (size_t i = 0; i < kCoords; ++i) {
    da += a.k[i];
    db += b.k[i];
  }
  if (da != db) return da < db;
  return a.k > b.k;
}

inline std::string linear_text(const std::array<Rational, kCoords>& c) {
  std::string s;
  for (size_t i = 0; i < kCoords; ++i) {
    if (sgn(c[i]) == 0) continue;
    Rational m = abs(c[i]);
    std::string piece = (m == 1 ? std::string() : to_string(m) + "*") + "x" + std::to_string(i + 1);
    if (s.empty())
      s = (sgn(c[i]) < 0 ? "-" : "") + piece;
    else
      s += (sgn(c[i]) < 0 ? " - " : " + ") + piece;
  }
  return s;
}

inline std::vector<RealTerm> real_terms(const ClosedFunction& f) {
  if (!f.is_real()) throw InputError("render: function is not real");
  std::vector<RealTerm> out;
  for (auto& [key, c] : f.terms()) {
    RealTerm t;
    t.k = key.k;
    int first_im = 0;
    for (size_t i = 0; i < kCoords; ++i) {
      t.alpha[i] = key.z[i].re;
      t.beta[i] = key.z[i].im;
      if (first_im == 0 && sgn(key.z[i].im) != 0) first_im = sgn(key.z[i].im);
    }
    if (first_im == 0) {
      t.coef = c.re;
      out.push_back(t);
    } else if (first_im > 0) {
      // c e^{i th} + conj(c) e^{-i th} = 2 Re c cos th - 2 Im c sin th
      if (sgn(c.re) != 0) {
        RealTerm u = t;
        u.kind = 1;
        u.coef = 2 * c.re;
        out.push_back(u);
      }
      if (sgn(c.im) != 0) {
        RealTerm u = t;
        u.kind = 2;
        u.coef = -2 * c.im;
        out.push_back(u);
      }
    }
  }
  std::sort(out.begin(), out.end(), real_term_less);
  return out;
}

}  // namespace detail

// Canonical text of a real ClosedFunction in the corpus expression grammar.
inline std::string render(const ClosedFunction& f) {
  auto terms = detail::real_terms(f);
  if (terms.empty()) return "0";
  std::string s;
  for (auto& t : terms) {
    std::vector<std::string> parts;
    Rational m = abs(t.coef);
    for (size_t i = 0; i < kCoords; ++i) {
      if (t.k[i] == 0) continue;
      parts.push_back("x" + std::to_string(i + 1) + (t.k[i] > 1 ? "^" + std::to_string(t.k[i]) : ""));
    }
    bool any_alpha = false;
    for (auto& a : t.alpha) any_alpha = any_alpha || sgn(a) != 0;
    if (any_alpha) parts.push_back("exp(" + detail::linear_text(t.alpha) + ")");
    if (t.kind == 1) parts.push_back("cos(" + detail::linear_text(t.beta) + ")");
    if (t.kind == 2) parts.push_back("sin(" + detail::linear_text(t.beta) + ")");
    if (m != 1 || parts.empty()) parts.insert(parts.begin(), to_string(m));
    std::string body;
    for (size_t i = 0; i < parts.size(); ++i) body += (i ? "*" : "") + parts[i];
    if (s.empty())
      s = (sgn(t.coef) < 0 ? "-" : "") + body;
    else
      s += (sgn(t.coef) < 0 ? " - " : " + ") + body;
  }
  return s;
}

using ParamEnv = std::map<std::string, Rational>;

inline int coordinate_index(const std::string& name, const char* prefix) {
  size_t pl = std::char_traits<char>::length(prefix);
  if (name.size() == pl + 1 && name.compare(0, pl, prefix) == 0 && name[pl] >= '1' && name[pl] <= '4')
    return name[pl] - '1';
  return -1;
}

namespace detail {

inline long integer_exponent(const ClosedFunction& e) {
  if (!e.is_constant()) throw InputError("exponent must be a constant");
  ComplexRational c = e.constant_value();
  if (!c.is_real() || c.re.get_den() != 1 || !c.re.get_num().fits_slong_p())
    throw InputError("exponent must be an integer");
  return c.re.get_num().get_si();
}

inline ClosedFunction cf_pow(const ClosedFunction& b, long n) {
  if (n < 0) {
    if (!b.is_constant() || b.is_zero()) throw InputError("negative power of a non-constant");
    return cf_pow(ClosedFunction(b.constant_value().inverse()), -n);
  }
  ClosedFunction r(1), base = b;
  while (n > 0) {
    if (n & 1) r *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return r;
}

// f must be a homogeneous linear polynomial; returns its coefficient vector.
inline std::array<ComplexRational, kCoords> linear_coefficients(const ClosedFunction& f, const std::string& fn) {
  std::array<ComplexRational, kCoords> a{};
  for (auto& [k, c] : f.terms()) {
    unsigned deg = 0;
    int idx = -1;
    for (size_t i = 0; i < kCoords; ++i) {
      if (!k.z[i].is_zero()) throw InputError(fn + "(): argument must be linear in x1..x4");
      deg += k.k[i];
      if (k.k[i]) idx = static_cast<int>(i);
    }
    if (deg != 1) throw InputError(fn + "(): argument must be a homogeneous linear form");
    a[idx] = c;
  }
  return a;
}

inline ClosedFunction exp_linear(const std::array<ComplexRational, kCoords>& a, const ComplexRational& scale) {
  CFKey k;
  for (size_t i = 0; i < kCoords; ++i) k.z[i] = a[i] * scale;
  return ClosedFunction::term(ComplexRational(1), k);
}

}  // namespace detail

inline ClosedFunction expr_to_cf(const ExprPtr& e, const ParamEnv& env = {}) {
  using Op = Expr::Op;
  switch (e->op) {
    case Op::Num: return ClosedFunction(e->num);
    case Op::Sym: {
      int i = coordinate_index(e->name, "x");
      if (i >= 0) return ClosedFunction::coordinate(static_cast<size_t>(i));
      auto it = env.find(e->name);
      if (it == env.end()) throw InputError("unknown symbol '" + e->name + "'");
      return ClosedFunction(it->second);
    }
    case Op::Neg: return -expr_to_cf(e->a, env);
    case Op::Add: return expr_to_cf(e->a, env) + expr_to_cf(e->b, env);
    case Op::Sub: return expr_to_cf(e->a, env) - expr_to_cf(e->b, env);
    case Op::Mul: return expr_to_cf(e->a, env) * expr_to_cf(e->b, env);
    case Op::Div: {
      ClosedFunction d = expr_to_cf(e->b, env);
      if (!d.is_constant()) throw InputError("division by a non-constant is outside the closed class");
      if (d.is_zero()) throw InputError("division by zero");
      return d.constant_value().inverse() * expr_to_cf(e->a, env);
    }
    case Op::Pow: return detail::cf_pow(expr_to_cf(e->a, env), detail::integer_exponent(expr_to_cf(e->b, env)));
    case Op::Call: {
      auto a = detail::linear_coefficients(expr_to_cf(e->a, env), e->name);
      const ComplexRational one(1), I(Rational(0), Rational(1)), half(rat(1, 2)), ihalf(Rational(0), rat(1, 2));
      if (e->name == "exp") return detail::exp_linear(a, one);
      if (e->name == "cosh") return half * (detail::exp_linear(a, one) + detail::exp_linear(a, -one));
      if (e->name == "sinh") return half * (detail::exp_linear(a, one) - detail::exp_linear(a, -one));
      if (e->name == "cos") return half * (detail::exp_linear(a, I) + detail::exp_linear(a, -I));
      if (e->name == "sin") return (-ihalf) * detail::exp_linear(a, I) + ihalf * detail::exp_linear(a, -I);
      throw InputError("unknown function '" + e->name + "'");
    }
  }
  throw InputError("bad expression");
}

inline ClosedFunction parse_cf(const std::string& text, const ParamEnv& env = {}) {
  return expr_to_cf(parse_expr(text), env);
}

using VectorField = std::array<ClosedFunction, kCoords>;

namespace detail {
struct VFValue {
  bool is_vec = false;
  ClosedFunction s;
  VectorField v;
};
inline VFValue vf_eval(const ExprPtr& e, const ParamEnv& env) {
  using Op = Expr::Op;
  auto scalar = [](ClosedFunction f) {
    VFValue r;
    r.s = std::move(f);
    return r;
  };
  auto combine = [](VFValue a, const VFValue& b, int sign) {
    if (!a.is_vec && !b.is_vec) {
      a.s = sign > 0 ? a.s + b.s : a.s - b.s;
      return a;
    }
    if ((!a.is_vec && !a.s.is_zero()) || (!b.is_vec && !b.s.is_zero()))
      throw InputError("vector field expression mixes scalar and vector summands");
    VFValue r;
    r.is_vec = true;
    for (size_t i = 0; i < kCoords; ++i) {
      ClosedFunction x = a.is_vec ? a.v[i] : ClosedFunction();
      ClosedFunction y = b.is_vec ? b.v[i] : ClosedFunction();
      r.v[i] = sign > 0 ? x + y : x - y;
    }
    return r;
  };
  switch (e->op) {
    case Op::Sym: {
      int i = coordinate_index(e->name, "d");
      if (i >= 0) {
        VFValue r;
        r.is_vec = true;
        r.v[static_cast<size_t>(i)] = ClosedFunction(1);
        return r;
      }
      return scalar(expr_to_cf(e, env));
    }
    case Op::Neg: {
      VFValue a = vf_eval(e->a, env);
      return combine(scalar(ClosedFunction()), a, -1);
    }
    case Op::Add: return combine(vf_eval(e->a, env), vf_eval(e->b, env), 1);
    case Op::Sub: return combine(vf_eval(e->a, env), vf_eval(e->b, env), -1);
    case Op::Mul: {
      VFValue a = vf_eval(e->a, env), b = vf_eval(e->b, env);
      if (a.is_vec && b.is_vec) throw InputError("product of two vector fields");
      if (!a.is_vec && !b.is_vec) return scalar(a.s * b.s);
      const VFValue& vec = a.is_vec ? a : b;
      const ClosedFunction& s = a.is_vec ? b.s : a.s;
      VFValue r;
      r.is_vec = true;
      for (size_t i = 0; i < kCoords; ++i) r.v[i] = s * vec.v[i];
      return r;
    }
    case Op::Div: {
      VFValue a = vf_eval(e->a, env);
      ClosedFunction d = expr_to_cf(e->b, env);
      if (!d.is_constant() || d.is_zero()) throw InputError("vector field divided by a non-constant");
      ComplexRational inv = d.constant_value().inverse();
      if (!a.is_vec) return scalar(inv * a.s);
      for (auto& c : a.v) c = inv * c;
      return a;
    }
    default: return scalar(expr_to_cf(e, env));
  }
}
}  // namespace detail

// Expression linear in the symbols d1..d4 (the coordinate derivations).
inline VectorField expr_to_vf(const ExprPtr& e, const ParamEnv& env = {}) {
  auto r = detail::vf_eval(e, env);
  if (!r.is_vec) {
    if (r.s.is_zero()) return VectorField{};
    throw InputError("expression is not a vector field");
  }
  return r.v;
}

inline std::string render_vf(const VectorField& v) {
  std::string s;
  for (size_t i = 0; i < kCoords; ++i) {
    if (v[i].is_zero()) continue;
    std::string c = render(v[i]);
    std::string d = "d" + std::to_string(i + 1);
    std::string piece;
    bool neg = false;
    if (c == "1")
      piece = d;
    else if (c == "-1") {
      piece = d;
      neg = true;
    } else if (detail::real_terms(v[i]).size() == 1) {
      if (c[0] == '-') {
        neg = true;
        c = c.substr(1);
      }
      piece = c + "*" + d;
    } else
      piece = "(" + c + ")*" + d;
    if (s.empty())
      s = (neg ? "-" : "") + piece;
    else
      s += (neg ? " - " : " + ") + piece;
  }
  return s.empty() ? "0" : s;
}

}  // namespace bialg

#endif  // BIALG_CF_TEXT_HPP
