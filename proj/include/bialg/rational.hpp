#ifndef BIALG_RATIONAL_HPP
#define BIALG_RATIONAL_HPP

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <compare>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace bialg {

// GMP keeps mpq_class canonical (den > 0, gcd 1) after every operation.
using Rational = mpq_class;

inline Rational rat(long n, long d = 1) {
  Rational q{mpz_class(n), mpz_class(d)};
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

// "3", "-1/2", "0.25" (decimal point allowed, converted exactly)
inline Rational parse_rational(std::string_view s) {
  std::string t(s);
  if (t.empty()) throw InputError("empty rational");
  auto dot = t.find('.');
  try {
    if (dot != std::string::npos) {
      std::string ip = t.substr(0, dot), fp = t.substr(dot + 1);
      bool neg = !ip.empty() && ip[0] == '-';
      if (neg || (!ip.empty() && ip[0] == '+')) ip.erase(0, 1);
      if (ip.empty()) ip = "0";
      if (fp.empty() || fp.find_first_not_of("0123456789") != std::string::npos ||
          ip.find_first_not_of("0123456789") != std::string::npos)
        throw InputError("bad rational '" + t + "'");
      mpz_class den = 1;
      for (size_t i = 0; i < fp.size(); ++i) den *= 10;
      Rational q(mpz_class(ip + fp), den);
      q.canonicalize();
      return neg ? Rational(-q) : q;
    }
    if (t[0] == '+') t.erase(0, 1);
    Rational q(t, 10);
    if (q.get_den() == 0) throw InputError("zero denominator in '" + t + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw InputError("bad rational '" + t + "'");
  }
}

inline std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  int c = cmp(a, b);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

struct ComplexRational {
  Rational re, im;

  ComplexRational() = default;
  ComplexRational(Rational r) : re(std::move(r)) {}
  ComplexRational(long r) : re(r) {}
  ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  ComplexRational conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }

  ComplexRational inverse() const {
    Rational n = norm2();
    if (sgn(n) == 0) throw InputError("division by zero complex rational");
    return {re / n, -im / n};
  }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }
  friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexRational operator/(const ComplexRational& a, const ComplexRational& b) {
    return a * b.inverse();
  }
  ComplexRational& operator+=(const ComplexRational& b) { re += b.re; im += b.im; return *this; }
  ComplexRational& operator-=(const ComplexRational& b) { re -= b.re; im -= b.im; return *this; }
  ComplexRational& operator*=(const ComplexRational& b) { return *this = *this * b; }

  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend std::strong_ordering operator<=>(const ComplexRational& a, const ComplexRational& b) {
    if (auto c = a.re <=> b.re; c != 0) return c;
    return a.im <=> b.im;
  }
};

inline std::string to_string(const ComplexRational& z) {
  if (z.is_real()) return to_string(z.re);
  return to_string(z.re) + (sgn(z.im) < 0 ? "-" : "+") + to_string(abs(z.im)) + "i";
}

// Best rational approximation with denominator <= max_den (continued fractions).
inline Rational rationalize(double v, long max_den) {
  if (!(v == v)) throw InputError("rationalize: NaN");
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double x = v;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(x);
    if (std::abs(a) > 1e15) break;
    long ai = static_cast<long>(a);
    long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double frac = x - a;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  if (q1 == 0) return Rational(static_cast<long>(std::llround(v)));
  return rat(p1, q1);
}

}  // namespace bialg

#endif  // BIALG_RATIONAL_HPP
