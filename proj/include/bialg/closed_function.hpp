#ifndef BIALG_CLOSED_FUNCTION_HPP
#define BIALG_CLOSED_FUNCTION_HPP

#include <array>
#include <complex>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "expr.hpp"

namespace bialg {

inline constexpr size_t kCoords = 4;

// x^k e^{z.x}
struct CFKey {
  std::array<unsigned, kCoords> k{};
  std::array<ComplexRational, kCoords> z{};

  CFKey conj() const {
    CFKey c = *this;
    for (auto& r : c.z) r = r.conj();
    return c;
  }
  friend bool operator==(const CFKey&, const CFKey&) = default;
  friend bool operator<(const CFKey& a, const CFKey& b) {
    if (a.k != b.k) return a.k < b.k;
    for (size_t i = 0; i < kCoords; ++i) {
      if (a.z[i] == b.z[i]) continue;
      return (a.z[i] <=> b.z[i]) < 0;
    }
    return false;
  }
};

// Finite sum of c * x^k * e^{z.x}; canonical by construction (no zero coefficients,
// sorted unique keys), so structural equality is function equality.
class ClosedFunction {
 public:
  using Terms = std::map<CFKey, ComplexRational>;

  ClosedFunction() = default;
  ClosedFunction(const Rational& c) { add_term(CFKey{}, ComplexRational(c)); }
  ClosedFunction(long c) : ClosedFunction(Rational(c)) {}
  ClosedFunction(const ComplexRational& c) { add_term(CFKey{}, c); }

  static ClosedFunction coordinate(size_t i) {
    CFKey k;
    k.k[i] = 1;
    ClosedFunction f;
    f.add_term(k, ComplexRational(1));
    return f;
  }
  static ClosedFunction term(const ComplexRational& c, const CFKey& key) {
    ClosedFunction f;
    f.add_term(key, c);
    return f;
  }
  // e^{z x_i}
  static ClosedFunction exp_rate(size_t i, const ComplexRational& z) {
    CFKey k;
    k.z[i] = z;
    return term(ComplexRational(1), k);
  }

  const Terms& terms() const { return t_; }
  size_t size() const { return t_.size(); }
  bool is_zero() const { return t_.empty(); }

  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first == CFKey{}); }
  ComplexRational constant_value() const {
    auto it = t_.find(CFKey{});
    return it == t_.end() ? ComplexRational() : it->second;
  }

  void add_term(const CFKey& k, const ComplexRational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.try_emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  bool is_real() const {
    for (auto& [k, c] : t_) {
      auto it = t_.find(k.conj());
      if (it == t_.end() || !(it->second == c.conj())) return false;
    }
    return true;
  }

  ClosedFunction conj() const {
    ClosedFunction f;
    for (auto& [k, c] : t_) f.t_.emplace(k.conj(), c.conj());
    return f;
  }

  ClosedFunction& operator+=(const ClosedFunction& g) {
    for (auto& [k, c] : g.t_) add_term(k, c);
    return *this;
  }
  ClosedFunction& operator-=(const ClosedFunction& g) {
    for (auto& [k, c] : g.t_) add_term(k, -c);
    return *this;
  }
  friend ClosedFunction operator+(ClosedFunction a, const ClosedFunction& b) { return a += b; }
  friend ClosedFunction operator-(ClosedFunction a, const ClosedFunction& b) { return a -= b; }
  friend ClosedFunction operator-(const ClosedFunction& a) {
    ClosedFunction f;
    for (auto& [k, c] : a.t_) f.t_.emplace(k, -c);
    return f;
  }
  friend ClosedFunction operator*(const ClosedFunction& a, const ClosedFunction& b) {
    ClosedFunction f;
    for (auto& [ka, ca] : a.t_)
      for (auto& [kb, cb] : b.t_) {
        CFKey k;
        for (size_t i = 0; i < kCoords; ++i) {
          k.k[i] = ka.k[i] + kb.k[i];
          k.z[i] = ka.z[i] + kb.z[i];
        }
        f.add_term(k, ca * cb);
      }
    return f;
  }
  ClosedFunction& operator*=(const ClosedFunction& b) { return *this = *this * b; }
  friend ClosedFunction operator*(const ComplexRational& s, const ClosedFunction& a) {
    ClosedFunction f;
    if (s.is_zero()) return f;
    for (auto& [k, c] : a.t_) f.t_.emplace(k, s * c);
    return f;
  }
  friend bool operator==(const ClosedFunction& a, const ClosedFunction& b) { return a.t_ == b.t_; }

  ClosedFunction diff(size_t i) const {
    ClosedFunction f;
    for (auto& [k, c] : t_) {
      if (!k.z[i].is_zero()) f.add_term(k, c * k.z[i]);
      if (k.k[i] > 0) {
        CFKey kk = k;
        --kk.k[i];
        f.add_term(kk, c * ComplexRational(Rational(k.k[i])));
      }
    }
    return f;
  }

  // value at x with an exact complex rate evaluation in double precision
  std::complex<double> eval_complex(const std::array<double, kCoords>& x) const {
    std::complex<double> s = 0;
    for (auto& [k, c] : t_) {
      std::complex<double> v = c.to_complex(), ex = 0;
      for (size_t i = 0; i < kCoords; ++i) {
        for (unsigned p = 0; p < k.k[i]; ++p) v *= x[i];
        ex += k.z[i].to_complex() * x[i];
      }
      s += v * std::exp(ex);
    }
    return s;
  }

  double eval(const std::array<double, kCoords>& x) const {
    if (!is_real()) throw InputError("cf_eval: function is not real");
    return eval_complex(x).real();
  }

  // Exact value at the origin (every exponential equals 1 there).
  ComplexRational at_origin() const {
    ComplexRational s;
    for (auto& [k, c] : t_) {
      bool poly_zero = false;
      for (auto p : k.k) poly_zero = poly_zero || p > 0;
      if (!poly_zero) s += c;
    }
    return s;
  }

  // Value at a rational point when every rate is zero on that point's support.
  bool exact_at(const std::array<Rational, kCoords>& x, ComplexRational& out) const {
    out = ComplexRational();
    for (auto& [k, c] : t_) {
      ComplexRational rate;
      for (size_t i = 0; i < kCoords; ++i) rate += k.z[i] * ComplexRational(x[i]);
      if (!rate.is_zero()) return false;
      ComplexRational v = c;
      for (size_t i = 0; i < kCoords; ++i)
        for (unsigned p = 0; p < k.k[i]; ++p) v *= ComplexRational(x[i]);
      out += v;
    }
    return true;
  }

  bool depends_on(size_t i) const {
    for (auto& [k, c] : t_)
      if (k.k[i] > 0 || !k.z[i].is_zero()) return true;
    return false;
  }

 private:
  Terms t_;
};

using CF = ClosedFunction;

}  // namespace bialg

#endif  // BIALG_CLOSED_FUNCTION_HPP
