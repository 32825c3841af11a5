#ifndef BIALG_RMATRIX_HPP
#define BIALG_RMATRIX_HPP

#include <string>
#include <vector>

#include "structure.hpp"

namespace bialg {

// r = r(i,j) X_i (x) X_j
using TensorElement = RatMatrix;

inline RatMatrix antisym_part(const RatMatrix& r) { return rat(1, 2) * (r - r.transpose()); }
inline RatMatrix sym_part(const RatMatrix& r) { return rat(1, 2) * (r + r.transpose()); }

// X_a ^ X_b = X_a (x) X_b - X_b (x) X_a
inline RatMatrix wedge2(size_t n, size_t a, size_t b, const Rational& c = 1) { return wedge_form(n, a, b, c); }

inline RatMatrix tensor2(size_t n, size_t a, size_t b, const Rational& c = 1) {
  RatMatrix r(n, n);
  r(a, b) = c;
  return r;
}

struct RSolutionSet {
  bool empty = true;
  RatMatrix particular;
  std::vector<RatMatrix> kernel;

  // r - particular in the span of the kernel
  bool contains(const RatMatrix& r) const { return contains_affine(r, {}); }

  // r0 + sum_p s_p rp for every value of the free symbols s_p
  bool contains_affine(const RatMatrix& r0, const std::vector<RatMatrix>& directions) const {
    if (empty) return false;
    if (!in_span(r0 - particular)) return false;
    for (auto& d : directions)
      if (!in_span(d)) return false;
    return true;
  }

 private:
  bool in_span(const RatMatrix& v) const {
    size_t n = v.rows(), m = n * n;
    RatMatrix a(m, kernel.size());
    std::vector<Rational> b(m);
    for (size_t c = 0; c < kernel.size(); ++c)
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a(i * n + j, c) = kernel[c](i, j);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) b[i * n + j] = v(i, j);
    if (kernel.empty()) return v.is_zero();
    return solve_affine(a, b).consistent;
  }
};

// The coboundary system X_i^t r + r X_i = Yd_i, i.e.
// sum_a r(a,k) f_ia^j + sum_b r(j,b) f_ib^k = fd^jk_i, as n^3 equations in n^2 unknowns.
inline RSolutionSet solve_coboundary(const StructureConstants& f, const StructureConstants& fd) {
  if (f.dim() != fd.dim()) throw InputError("solve_coboundary: dimension mismatch");
  size_t n = f.dim();
  RatMatrix a(n * n * n, n * n);
  std::vector<Rational> b(n * n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        size_t row = (i * n + j) * n + k;
        for (size_t x = 0; x < n; ++x) {
          a(row, x * n + k) += f(i, x, j);
          a(row, j * n + x) += f(i, x, k);
        }
        b[row] = fd(j, k, i);
      }
  auto sol = solve_affine(a, b);
  RSolutionSet out;
  if (!sol.consistent) return out;
  out.empty = false;
  auto unflat = [n](const std::vector<Rational>& v) {
    RatMatrix r(n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) r(i, j) = v[i * n + j];
    return r;
  };
  out.particular = unflat(sol.particular);
  for (auto& k : sol.kernel) out.kernel.push_back(unflat(k));
  return out;
}

// delta(X_i) = [X_i (x) 1 + 1 (x) X_i, r]
inline StructureConstants cocommutator_from_r(const RatMatrix& r, const StructureConstants& f) {
  size_t n = f.dim();
  StructureConstants fd(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        Rational s;
        for (size_t x = 0; x < n; ++x) s += r(x, k) * f(i, x, j) + r(j, x) * f(i, x, k);
        fd(j, k, i) = s;
      }
  if (!fd.is_antisymmetric())
    throw InputError("cocommutator_from_r: result not antisymmetric (symmetric part of r is not ad-invariant)");
  return fd;
}

// [[r,r]] = [r12,r13] + [r12,r23] + [r13,r23]
inline Tensor3 schouten(const RatMatrix& r, const StructureConstants& f) {
  size_t n = f.dim();
  if (!(r.transpose() == Rational(-1) * r)) throw InputError("schouten: r is not antisymmetric");
  Tensor3 t(n);
  for (size_t a = 0; a < n; ++a)
    for (size_t c = 0; c < n; ++c)
      for (size_t m = 0; m < n; ++m) {
        const Rational& fac = f(a, c, m);
        if (sgn(fac) == 0) continue;
        for (size_t x = 0; x < n; ++x)
          for (size_t y = 0; y < n; ++y) {
            t(m, x, y) += r(a, x) * r(c, y) * fac;
            t(x, m, y) += r(x, a) * r(c, y) * fac;
            t(x, y, m) += r(x, a) * r(y, c) * fac;
          }
      }
  return t;
}

// derivation action of every X_i on a 3-tensor vanishes
inline bool ad_invariant3(const Tensor3& t, const StructureConstants& f) {
  size_t n = f.dim();
  for (size_t i = 0; i < n; ++i)
    for (size_t p = 0; p < n; ++p)
      for (size_t q = 0; q < n; ++q)
        for (size_t s = 0; s < n; ++s) {
          Rational v;
          for (size_t a = 0; a < n; ++a) v += f(i, a, p) * t(a, q, s) + f(i, a, q) * t(p, a, s) + f(i, a, s) * t(p, q, a);
          if (sgn(v) != 0) return false;
        }
  return true;
}

// X_i^t s + s X_i = 0 for all i
inline bool ad_invariant2(const RatMatrix& s, const StructureConstants& f) {
  for (auto& x : adjoints(f).X)
    if (!(x.transpose() * s + s * x).is_zero()) return false;
  return true;
}

// sum_{a<b<c} t(a,b,c) X_a^X_b^X_c with the six-term wedge
inline Tensor3 wedge3(size_t n, size_t a, size_t b, size_t c, const Rational& v = 1) {
  Tensor3 t(n);
  t(a, b, c) += v;
  t(b, c, a) += v;
  t(c, a, b) += v;
  t(b, a, c) -= v;
  t(a, c, b) -= v;
  t(c, b, a) -= v;
  return t;
}

// "X" for g, "Xd" for the dual; "0" for the zero tensor
inline std::string render_wedge3(const Tensor3& t, const std::string& sym = "X") {
  std::string s;
  for (size_t a = 0; a < t.n; ++a)
    for (size_t b = a + 1; b < t.n; ++b)
      for (size_t c = b + 1; c < t.n; ++c) {
        const Rational& v = t(a, b, c);
        if (sgn(v) == 0) continue;
        std::string body = sym + std::to_string(a + 1) + "^" + sym + std::to_string(b + 1) + "^" + sym +
                           std::to_string(c + 1);
        Rational m = abs(v);
        if (m != 1) body = to_string(m) + "*" + body;
        s += s.empty() ? (sgn(v) < 0 ? "-" : "") : (sgn(v) < 0 ? " - " : " + ");
        s += body;
      }
  return s.empty() ? "0" : s;
}

// c*Xi^Xj for the antisymmetric part, c*Xi.Xj (symmetrized tensor) for the rest
inline std::string render_r(const RatMatrix& r, const std::string& sym = "X") {
  std::string s;
  auto term = [&](const Rational& v, const std::string& body) {
    if (sgn(v) == 0) return;
    Rational m = abs(v);
    s += s.empty() ? (sgn(v) < 0 ? "-" : "") : (sgn(v) < 0 ? " - " : " + ");
    s += (m != 1 ? to_string(m) + "*" : "") + body;
  };
  size_t n = r.rows();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      term((r(i, j) - r(j, i)) / 2, sym + std::to_string(i + 1) + "^" + sym + std::to_string(j + 1));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j)
      term(i == j ? r(i, i) : (r(i, j) + r(j, i)) / 2, sym + std::to_string(i + 1) + "." + sym + std::to_string(j + 1));
  return s.empty() ? "0" : s;
}

enum class RKind { Triangular, Quasitriangular, Invalid };

inline const char* to_string(RKind k) {
  switch (k) {
    case RKind::Triangular: return "triangular";
    case RKind::Quasitriangular: return "quasitriangular";
    default: return "invalid";
  }
}

struct RClassification {
  RKind kind = RKind::Invalid;
  bool symmetric_invariant = false;
  bool schouten_antisymmetric = false;
  bool schouten_invariant = false;
  Tensor3 schouten;
  std::string reason;
};

inline RClassification classify_r(const RatMatrix& r, const StructureConstants& f) {
  RClassification c;
  c.symmetric_invariant = ad_invariant2(sym_part(r), f);
  c.schouten = schouten(antisym_part(r), f);
  c.schouten_antisymmetric = c.schouten.is_totally_antisymmetric();
  c.schouten_invariant = ad_invariant3(c.schouten, f);
  if (!c.symmetric_invariant) {
    c.reason = "symmetric part is not ad-invariant";
  } else if (c.schouten.is_zero()) {
    c.kind = RKind::Triangular;
  } else if (!c.schouten_antisymmetric) {
    c.reason = "Schouten bracket is not totally antisymmetric";
  } else if (!c.schouten_invariant) {
    c.reason = "Schouten bracket is not ad-invariant";
  } else {
    c.kind = RKind::Quasitriangular;
  }
  return c;
}

}  // namespace bialg

#endif  // BIALG_RMATRIX_HPP
