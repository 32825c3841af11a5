#ifndef BIALG_MATEXP_HPP
#define BIALG_MATEXP_HPP

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/Polynomials>

#include "closed_function.hpp"
#include "linalg.hpp"

namespace bialg {

using CFMatrix = Matrix<ClosedFunction>;

// Polynomials over Q(i), coefficients low to high degree.
using Poly = std::vector<ComplexRational>;

namespace poly {

inline void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

// quotient and remainder of a / b
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  if (b.empty()) throw InputError("polynomial division by zero");
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  Poly q(a.size() - b.size() + 1);
  ComplexRational lead_inv = b.back().inverse();
  size_t shift_max = a.size() - b.size();
  for (size_t s = shift_max + 1; s-- > 0;) {
    ComplexRational c = a[s + b.size() - 1] * lead_inv;
    q[s] = c;
    if (c.is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) a[s + j] -= c * b[j];
  }
  trim(a);
  trim(q);
  return {q, a};
}

inline Poly monic(Poly p) {
  trim(p);
  if (p.empty()) return p;
  ComplexRational inv = p.back().inverse();
  for (auto& c : p) c = c * inv;
  return p;
}

inline Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

inline Poly derivative(const Poly& p) {
  Poly d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(ComplexRational(Rational(static_cast<long>(i))) * p[i]);
  trim(d);
  return d;
}

inline ComplexRational eval(const Poly& p, const ComplexRational& z) {
  ComplexRational s;
  for (size_t i = p.size(); i-- > 0;) s = s * z + p[i];
  return s;
}

inline std::string to_string(const Poly& p) {
  std::string s;
  for (size_t i = p.size(); i-- > 0;) {
    if (p[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + bialg::to_string(p[i]) + ")";
    if (i > 0) s += "*x" + (i > 1 ? "^" + std::to_string(i) : std::string());
  }
  return s.empty() ? "0" : s;
}

// Yun's square-free decomposition: result[m-1] collects the roots of multiplicity m.
inline std::vector<Poly> squarefree(const Poly& f) {
  std::vector<Poly> out;
  Poly a = monic(f);
  Poly b = gcd(a, derivative(a));
  Poly c = divmod(a, b).first;
  Poly d = poly::divmod(derivative(a), b).first;
  {
    Poly dc = derivative(c);
    for (size_t i = 0; i < std::max(d.size(), dc.size()); ++i) {
      if (i >= d.size()) d.push_back(ComplexRational());
      if (i < dc.size()) d[i] -= dc[i];
    }
    trim(d);
  }
  while (c.size() > 1) {
    Poly g = gcd(c, d);
    out.push_back(g);
    c = divmod(c, g).first;
    Poly nd = divmod(d, g).first;
    Poly dc = derivative(c);
    for (size_t i = 0; i < std::max(nd.size(), dc.size()); ++i) {
      if (i >= nd.size()) nd.push_back(ComplexRational());
      if (i < dc.size()) nd[i] -= dc[i];
    }
    trim(nd);
    d = nd;
  }
  return out;
}

// Numeric roots of a polynomial with real coefficients (companion-matrix eigenvalues).
inline std::vector<std::complex<double>> numeric_roots(const Poly& p) {
  Eigen::VectorXd c(static_cast<Eigen::Index>(p.size()));
  for (size_t i = 0; i < p.size(); ++i) {
    if (!p[i].is_real()) throw UnsupportedSpectrum("numeric_roots: non-real coefficient");
    c(static_cast<Eigen::Index>(i)) = p[i].re.get_d();
  }
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(c);
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < solver.roots().size(); ++i) out.push_back(solver.roots()(i));
  return out;
}

}  // namespace poly

// Characteristic polynomial det(xI - M) by Faddeev-LeVerrier.
inline Poly char_poly(const RatMatrix& m) {
  size_t n = m.rows();
  Poly c(n + 1);
  c[n] = ComplexRational(1);
  RatMatrix mk(n, n), I = RatMatrix::identity(n);
  for (size_t k = 1; k <= n; ++k) {
    mk = m * mk + c[n - k + 1].re * I;
    Rational tr;
    RatMatrix prod = m * mk;
    for (size_t i = 0; i < n; ++i) tr += prod(i, i);
    c[n - k] = ComplexRational(Rational(-tr / static_cast<long>(k)));
  }
  return c;
}

struct Eigenvalue {
  ComplexRational value;
  unsigned multiplicity = 1;
};

// Exact spectrum of M in Q(i). Candidates come from a numeric root finder applied
// to each square-free factor and are only accepted after exact verification.
inline std::vector<Eigenvalue> exact_spectrum(const RatMatrix& m) {
  Poly p = char_poly(m);
  auto parts = poly::squarefree(p);
  std::vector<Eigenvalue> out;
  for (size_t mult = 1; mult <= parts.size(); ++mult) {
    Poly s = parts[mult - 1];
    while (s.size() > 1) {
      bool progress = false;
      for (auto& z : poly::numeric_roots(s)) {
        ComplexRational cand(rationalize(z.real(), 100000), rationalize(z.imag(), 100000));
        if (!poly::eval(s, cand).is_zero()) continue;
        out.push_back({cand, static_cast<unsigned>(mult)});
        s = poly::divmod(s, Poly{-cand, ComplexRational(1)}).first;
        if (!cand.is_real()) {
          // keep the remaining factor real: the conjugate root is also present
          out.push_back({cand.conj(), static_cast<unsigned>(mult)});
          s = poly::divmod(s, Poly{-cand.conj(), ComplexRational(1)}).first;
        }
        progress = true;
        break;
      }
      if (!progress)
        throw UnsupportedSpectrum("characteristic polynomial factor " + poly::to_string(s) +
                                  " has roots outside Q(i)");
    }
  }
  return out;
}

namespace detail {

// quasi-polynomial in one variable: (power, rate) -> coefficient
using QPoly = std::map<std::pair<unsigned, ComplexRational>, ComplexRational,
                       bool (*)(const std::pair<unsigned, ComplexRational>&,
                                const std::pair<unsigned, ComplexRational>&)>;

inline bool qkey_less(const std::pair<unsigned, ComplexRational>& a, const std::pair<unsigned, ComplexRational>& b) {
  if (a.first != b.first) return a.first < b.first;
  return (a.second <=> b.second) < 0;
}

inline QPoly qpoly() { return QPoly(qkey_less); }

inline void qadd(QPoly& q, unsigned p, const ComplexRational& rate, const ComplexRational& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = q.try_emplace({p, rate}, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) q.erase(it);
  }
}

// e^{lt} * integral_0^t e^{-ls} g(s) ds
inline QPoly putzer_step(const QPoly& g, const ComplexRational& l) {
  QPoly out = qpoly();
  for (auto& [key, c] : g) {
    unsigned p = key.first;
    ComplexRational a = key.second - l;
    if (a.is_zero()) {
      qadd(out, p + 1, l, c * ComplexRational(rat(1, static_cast<long>(p) + 1)));
      continue;
    }
    // int_0^t s^p e^{as} ds = e^{at} sum_j (-1)^j p!/(p-j)! t^{p-j} / a^{j+1} - (-1)^p p! / a^{p+1}
    ComplexRational ainv = a.inverse(), apow = ainv, fall(1);
    for (unsigned j = 0; j <= p; ++j) {
      ComplexRational term = fall * apow;
      if (j % 2) term = -term;
      qadd(out, p - j, key.second, c * term);
      if (j == p) {
        qadd(out, 0, l, -(c * term));
      }
      fall = fall * ComplexRational(Rational(static_cast<long>(p - j)));
      apow = apow * ainv;
    }
  }
  return out;
}

inline ClosedFunction qpoly_to_cf(const QPoly& q, size_t coord) {
  ClosedFunction f;
  for (auto& [key, c] : q) {
    CFKey k;
    k.k[coord] = key.first;
    k.z[coord] = key.second;
    f.add_term(k, c);
  }
  return f;
}

}  // namespace detail

inline bool is_nilpotent(const RatMatrix& m) {
  RatMatrix p = m;
  for (size_t k = 1; k < m.rows(); ++k) p = p * m;
  return p.is_zero();
}

inline CFMatrix to_cf(const RatMatrix& m) {
  CFMatrix r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r(i, j) = ClosedFunction(m(i, j));
  return r;
}

// exp(x_coord * M) with ClosedFunction entries
inline CFMatrix cf_matexp(const RatMatrix& m, size_t coord) {
  size_t n = m.rows();
  if (n != m.cols()) throw InputError("cf_matexp: matrix not square");
  if (coord >= kCoords) throw InputError("cf_matexp: coordinate index out of range");
  CFMatrix out(n, n);
  if (is_nilpotent(m)) {
    RatMatrix pw = RatMatrix::identity(n);
    Rational fact = 1;
    ClosedFunction x = ClosedFunction::coordinate(coord), xp(1);
    for (size_t k = 0; k < n && !pw.is_zero(); ++k) {
      if (k > 0) {
        pw = pw * m;
        fact *= static_cast<long>(k);
        xp *= x;
      }
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          if (sgn(pw(i, j)) != 0) out(i, j) += ComplexRational(Rational(pw(i, j) / fact)) * xp;
    }
    return out;
  }
  std::vector<ComplexRational> lam;
  for (auto& e : exact_spectrum(m))
    for (unsigned k = 0; k < e.multiplicity; ++k) lam.push_back(e.value);
  CRMatrix M(n, n), P = CRMatrix::identity(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) M(i, j) = ComplexRational(m(i, j));
  detail::QPoly r = detail::qpoly();
  detail::qadd(r, 0, lam[0], ComplexRational(1));
  for (size_t k = 0; k < n; ++k) {
    if (k > 0) {
      CRMatrix shift = M;
      for (size_t i = 0; i < n; ++i) shift(i, i) -= lam[k - 1];
      P = shift * P;
      r = detail::putzer_step(r, lam[k]);
    }
    ClosedFunction rk = detail::qpoly_to_cf(r, coord);
    if (rk.is_zero()) continue;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (!P(i, j).is_zero()) out(i, j) += P(i, j) * rk;
  }
  return out;
}

// Laplace expansion; fine for n <= 8 with sparse entries.
inline ClosedFunction cf_det(const CFMatrix& m) {
  size_t n = m.rows();
  if (n != m.cols()) throw InputError("cf_det: matrix not square");
  if (n == 0) return ClosedFunction(1);
  if (n == 1) return m(0, 0);
  std::vector<size_t> cols(n);
  for (size_t i = 0; i < n; ++i) cols[i] = i;
  std::function<ClosedFunction(size_t, std::vector<size_t>&)> rec = [&](size_t row, std::vector<size_t>& cs) {
    if (cs.size() == 1) return m(row, cs[0]);
    ClosedFunction s;
    for (size_t t = 0; t < cs.size(); ++t) {
      if (m(row, cs[t]).is_zero()) continue;
      std::vector<size_t> rest;
      for (size_t u = 0; u < cs.size(); ++u)
        if (u != t) rest.push_back(cs[u]);
      ClosedFunction sub = m(row, cs[t]) * rec(row + 1, rest);
      if (t % 2)
        s -= sub;
      else
        s += sub;
    }
    return s;
  };
  return rec(0, cols);
}

// Inverse through the adjugate; the determinant must be a single term c*e^{z.x}.
// transpose of the cofactor matrix, so m * adj(m) = det(m) I
inline CFMatrix cf_adjugate(const CFMatrix& m) {
  size_t n = m.rows();
  CFMatrix out(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      CFMatrix minor(n - 1, n - 1);
      for (size_t r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (size_t s = 0, ss = 0; s < n; ++s) {
          if (s == i) continue;
          minor(rr, ss++) = m(r, s);
        }
        ++rr;
      }
      ClosedFunction cof = cf_det(minor);
      out(i, j) = ((i + j) % 2) ? -cof : cof;
    }
  return out;
}

inline CFMatrix cf_inverse(const CFMatrix& m) {
  size_t n = m.rows();
  ClosedFunction d = cf_det(m);
  if (d.size() != 1) throw NonUnitDeterminant("determinant is not a single exponential term: " + std::to_string(d.size()) + " terms");
  auto [key, c] = *d.terms().begin();
  for (auto p : key.k)
    if (p != 0) throw NonUnitDeterminant("determinant has a polynomial factor");
  CFKey inv_key;
  for (size_t i = 0; i < kCoords; ++i) inv_key.z[i] = -key.z[i];
  ClosedFunction dinv = ClosedFunction::term(c.inverse(), inv_key);
  CFMatrix out = cf_adjugate(m);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out(i, j) = out(i, j) * dinv;
  return out;
}

inline CFMatrix cf_diff(const CFMatrix& m, size_t coord) {
  CFMatrix r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).diff(coord);
  return r;
}

}  // namespace bialg

#endif  // BIALG_MATEXP_HPP
