#ifndef BIALG_EXPR_HPP
#define BIALG_EXPR_HPP

#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rational.hpp"

namespace bialg {

// Expression AST for the corpus grammar:
//   expr  := term (('+'|'-') term)*
//   term  := unary (('*'|'/') unary)*
//   unary := ('+'|'-') unary | power
//   power := primary ('^' unary)?
//   primary := NUMBER | IDENT | IDENT '(' expr ')' | '(' expr ')'
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Op { Num, Sym, Neg, Add, Sub, Mul, Div, Pow, Call };
  Op op = Op::Num;
  Rational num;      // Num
  std::string name;  // Sym, Call
  ExprPtr a, b;      // operands (Call uses a)
};

namespace expr {

inline ExprPtr num(const Rational& v) {
  auto e = std::make_shared<Expr>();
  e->op = Expr::Op::Num;
  e->num = v;
  return e;
}
inline ExprPtr sym(const std::string& n) {
  auto e = std::make_shared<Expr>();
  e->op = Expr::Op::Sym;
  e->name = n;
  return e;
}
inline ExprPtr node(Expr::Op op, ExprPtr a, ExprPtr b = nullptr) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}
inline ExprPtr call(const std::string& fn, ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->op = Expr::Op::Call;
  e->name = fn;
  e->a = std::move(a);
  return e;
}

inline bool is_num(const ExprPtr& e, long v) { return e->op == Expr::Op::Num && e->num == v; }

// constructors with light constant folding, used by symbolic differentiation
inline ExprPtr add(ExprPtr a, ExprPtr b) {
  if (is_num(a, 0)) return b;
  if (is_num(b, 0)) return a;
  if (a->op == Expr::Op::Num && b->op == Expr::Op::Num) return num(a->num + b->num);
  return node(Expr::Op::Add, a, b);
}
inline ExprPtr sub(ExprPtr a, ExprPtr b) {
  if (is_num(b, 0)) return a;
  if (a->op == Expr::Op::Num && b->op == Expr::Op::Num) return num(a->num - b->num);
  if (is_num(a, 0)) return node(Expr::Op::Neg, b);
  return node(Expr::Op::Sub, a, b);
}
inline ExprPtr mul(ExprPtr a, ExprPtr b) {
  if (is_num(a, 0) || is_num(b, 0)) return num(0);
  if (is_num(a, 1)) return b;
  if (is_num(b, 1)) return a;
  if (a->op == Expr::Op::Num && b->op == Expr::Op::Num) return num(a->num * b->num);
  return node(Expr::Op::Mul, a, b);
}
inline ExprPtr div(ExprPtr a, ExprPtr b) {
  if (is_num(a, 0)) return num(0);
  if (is_num(b, 1)) return a;
  return node(Expr::Op::Div, a, b);
}
inline ExprPtr neg(ExprPtr a) {
  if (a->op == Expr::Op::Num) return num(-a->num);
  return node(Expr::Op::Neg, a);
}
inline ExprPtr pow(ExprPtr a, long n) {
  if (n == 0) return num(1);
  if (n == 1) return a;
  return node(Expr::Op::Pow, a, num(n));
}

}  // namespace expr

class ExprParser {
 public:
  explicit ExprParser(std::string text, int line = 1, int col0 = 1)
      : s_(std::move(text)), line_(line), col0_(col0) {}

  ExprPtr parse() {
    ExprPtr e = parse_expr();
    skip_ws();
    if (p_ != s_.size()) fail("unexpected '" + std::string(1, s_[p_]) + "'");
    return e;
  }

 private:
  std::string s_;
  size_t p_ = 0;
  int line_, col0_;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, col0_ + static_cast<int>(p_));
  }
  void skip_ws() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  bool eat(char c) {
    skip_ws();
    if (p_ < s_.size() && s_[p_] == c) {
      ++p_;
      return true;
    }
    return false;
  }
  ExprPtr parse_expr() {
    ExprPtr e = parse_term();
    while (true) {
      if (eat('+'))
        e = expr::node(Expr::Op::Add, e, parse_term());
      else if (eat('-'))
        e = expr::node(Expr::Op::Sub, e, parse_term());
      else
        return e;
    }
  }
  ExprPtr parse_term() {
    ExprPtr e = parse_unary();
    while (true) {
      if (eat('*'))
        e = expr::node(Expr::Op::Mul, e, parse_unary());
      else if (eat('/'))
        e = expr::node(Expr::Op::Div, e, parse_unary());
      else
        return e;
    }
  }
  ExprPtr parse_unary() {
    if (eat('-')) return expr::node(Expr::Op::Neg, parse_unary());
    if (eat('+')) return parse_unary();
    return parse_power();
  }
  ExprPtr parse_power() {
    ExprPtr base = parse_primary();
    if (eat('^')) return expr::node(Expr::Op::Pow, base, parse_unary());
    return base;
  }
  ExprPtr parse_primary() {
    skip_ws();
    if (p_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[p_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t st = p_;
      while (p_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[p_])) || s_[p_] == '.')) ++p_;
      try {
        return expr::num(parse_rational(s_.substr(st, p_ - st)));
      } catch (const InputError&) {
        p_ = st;
        fail("malformed number");
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t st = p_;
      while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) ++p_;
      std::string id = s_.substr(st, p_ - st);
      if (eat('(')) {
        static const char* fns[] = {"exp", "sin", "cos", "sinh", "cosh"};
        bool ok = false;
        for (auto f : fns) ok = ok || id == f;
        if (!ok) {
          p_ = st;
          fail("unknown function '" + id + "'");
        }
        ExprPtr arg = parse_expr();
        if (!eat(')')) fail("expected ')'");
        return expr::call(id, arg);
      }
      return expr::sym(id);
    }
    if (eat('(')) {
      ExprPtr e = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

inline ExprPtr parse_expr(const std::string& text, int line = 1, int col0 = 1) {
  return ExprParser(text, line, col0).parse();
}

// Collect symbol names appearing in an expression.
inline void collect_symbols(const ExprPtr& e, std::vector<std::string>& out) {
  if (!e) return;
  if (e->op == Expr::Op::Sym) {
    for (auto& s : out)
      if (s == e->name) return;
    out.push_back(e->name);
    return;
  }
  collect_symbols(e->a, out);
  collect_symbols(e->b, out);
}

// Replace symbols by expressions (parameter binding).
inline ExprPtr substitute(const ExprPtr& e, const std::map<std::string, ExprPtr>& sub) {
  if (!e) return e;
  if (e->op == Expr::Op::Sym) {
    auto it = sub.find(e->name);
    return it == sub.end() ? e : it->second;
  }
  if (e->op == Expr::Op::Num) return e;
  auto a = substitute(e->a, sub);
  auto b = substitute(e->b, sub);
  if (a == e->a && b == e->b) return e;
  auto n = std::make_shared<Expr>(*e);
  n->a = a;
  n->b = b;
  return n;
}

// Text form that parses back to the same text; parentheses only where needed.
inline int expr_prec(const ExprPtr& e) {
  using Op = Expr::Op;
  switch (e->op) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::Pow: return 4;
    case Op::Num:
      if (sgn(e->num) < 0) return 3;
      return e->num.get_den() == 1 ? 5 : 2;
    default: return 5;
  }
}

inline std::string to_text(const ExprPtr& e) {
  using Op = Expr::Op;
  auto wrap = [](const ExprPtr& x, bool paren) { return paren ? "(" + to_text(x) + ")" : to_text(x); };
  int p = expr_prec(e);
  switch (e->op) {
    case Op::Num: return to_string(e->num);
    case Op::Sym: return e->name;
    case Op::Call: return e->name + "(" + to_text(e->a) + ")";
    case Op::Neg: return "-" + wrap(e->a, expr_prec(e->a) < 4);
    case Op::Add: return wrap(e->a, false) + " + " + wrap(e->b, expr_prec(e->b) <= 3);
    case Op::Sub: return wrap(e->a, false) + " - " + wrap(e->b, expr_prec(e->b) <= 3);
    case Op::Mul: return wrap(e->a, expr_prec(e->a) < p) + "*" + wrap(e->b, expr_prec(e->b) <= p);
    case Op::Div: return wrap(e->a, expr_prec(e->a) < p) + "/" + wrap(e->b, expr_prec(e->b) <= p);
    case Op::Pow: return wrap(e->a, expr_prec(e->a) <= p) + "^" + wrap(e->b, expr_prec(e->b) < 5);
  }
  return "?";
}

// Exact rational value of a constant expression, or throw InputError.
inline Rational eval_rational(const ExprPtr& e, const std::map<std::string, Rational>& env = {}) {
  using Op = Expr::Op;
  switch (e->op) {
    case Op::Num: return e->num;
    case Op::Sym: {
      auto it = env.find(e->name);
      if (it == env.end()) throw InputError("unbound symbol '" + e->name + "'");
      return it->second;
    }
    case Op::Neg: return -eval_rational(e->a, env);
    case Op::Add: return eval_rational(e->a, env) + eval_rational(e->b, env);
    case Op::Sub: return eval_rational(e->a, env) - eval_rational(e->b, env);
    case Op::Mul: return eval_rational(e->a, env) * eval_rational(e->b, env);
    case Op::Div: {
      Rational d = eval_rational(e->b, env);
      if (sgn(d) == 0) throw InputError("division by zero");
      return eval_rational(e->a, env) / d;
    }
    case Op::Pow: {
      Rational base = eval_rational(e->a, env), ex = eval_rational(e->b, env);
      if (ex.get_den() != 1 || !ex.get_num().fits_slong_p()) throw InputError("non-integer exponent");
      long n = ex.get_num().get_si();
      Rational r = 1;
      for (long i = 0; i < std::labs(n); ++i) r *= base;
      if (n < 0) {
        if (sgn(r) == 0) throw InputError("division by zero");
        r = 1 / r;
      }
      return r;
    }
    case Op::Call: throw InputError("function '" + e->name + "' in a constant expression");
  }
  throw InputError("bad expression");
}

}  // namespace bialg

#endif  // BIALG_EXPR_HPP
