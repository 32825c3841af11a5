#ifndef BIALG_STRUCTURE_HPP
#define BIALG_STRUCTURE_HPP

#include <array>
#include <random>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace bialg {

// [X_i, X_j] = f(i,j,k) X_k, zero-based indices.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(size_t dim) : n_(dim), f_(dim * dim * dim) {}

  size_t dim() const { return n_; }
  Rational& operator()(size_t i, size_t j, size_t k) { return f_[(i * n_ + j) * n_ + k]; }
  const Rational& operator()(size_t i, size_t j, size_t k) const { return f_[(i * n_ + j) * n_ + k]; }

  // sets f_ij^k and f_ji^k = -f_ij^k together
  void set_bracket(size_t i, size_t j, size_t k, const Rational& v) {
    (*this)(i, j, k) = v;
    (*this)(j, i, k) = -v;
  }

  bool is_zero() const {
    for (auto& v : f_)
      if (sgn(v) != 0) return false;
    return true;
  }

  bool is_antisymmetric() const {
    for (size_t i = 0; i < n_; ++i)
      for (size_t j = 0; j < n_; ++j)
        for (size_t k = 0; k < n_; ++k)
          if ((*this)(i, j, k) != -(*this)(j, i, k)) return false;
    return true;
  }

  void require_antisymmetric(const char* who) const {
    if (!is_antisymmetric()) throw InputError(std::string(who) + ": structure constants are not antisymmetric");
  }

  friend bool operator==(const StructureConstants& a, const StructureConstants& b) {
    return a.n_ == b.n_ && a.f_ == b.f_;
  }

 private:
  size_t n_ = 0;
  std::vector<Rational> f_;
};

// Dense rank-3 tensor, used for residuals and Schouten brackets.
struct Tensor3 {
  size_t n = 0;
  std::vector<Rational> v;
  Tensor3() = default;
  explicit Tensor3(size_t dim) : n(dim), v(dim * dim * dim) {}
  Rational& operator()(size_t i, size_t j, size_t k) { return v[(i * n + j) * n + k]; }
  const Rational& operator()(size_t i, size_t j, size_t k) const { return v[(i * n + j) * n + k]; }
  bool is_zero() const {
    for (auto& x : v)
      if (sgn(x) != 0) return false;
    return true;
  }
  bool is_totally_antisymmetric() const {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k) {
          const Rational& x = (*this)(i, j, k);
          if (x != -(*this)(j, i, k) || x != -(*this)(i, k, j)) return false;
        }
    return true;
  }
  friend bool operator==(const Tensor3&, const Tensor3&) = default;
};

struct Tensor4 {
  size_t n = 0;
  std::vector<Rational> v;
  Tensor4() = default;
  explicit Tensor4(size_t dim) : n(dim), v(dim * dim * dim * dim) {}
  Rational& operator()(size_t i, size_t j, size_t k, size_t l) { return v[((i * n + j) * n + k) * n + l]; }
  const Rational& operator()(size_t i, size_t j, size_t k, size_t l) const {
    return v[((i * n + j) * n + k) * n + l];
  }
  bool is_zero() const {
    for (auto& x : v)
      if (sgn(x) != 0) return false;
    return true;
  }
  friend bool operator==(const Tensor4&, const Tensor4&) = default;
};

struct JacobiReport {
  bool pass = false;
  Tensor4 residual;  // residual(i,j,m,n) = J_{ijm}^n
};

inline JacobiReport jacobi_check(const StructureConstants& f) {
  f.require_antisymmetric("jacobi_check");
  size_t n = f.dim();
  JacobiReport rep{true, Tensor4(n)};
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t m = 0; m < n; ++m)
        for (size_t q = 0; q < n; ++q) {
          Rational s;
          for (size_t k = 0; k < n; ++k)
            s += f(i, j, k) * f(k, m, q) + f(i, k, q) * f(m, j, k) + f(j, k, q) * f(i, m, k);
          if (sgn(s) != 0) rep.pass = false;
          rep.residual(i, j, m, q) = s;
        }
  return rep;
}

// Adjoint matrices: X[i](j,k) = -f_ij^k, Y[k](i,j) = -f_ij^k.
struct AdjointSet {
  std::vector<RatMatrix> X, Y;
};

inline AdjointSet adjoints(const StructureConstants& f) {
  size_t n = f.dim();
  AdjointSet a;
  for (size_t i = 0; i < n; ++i) {
    RatMatrix x(n, n), y(n, n);
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        x(j, k) = -f(i, j, k);
        y(j, k) = -f(j, k, i);
      }
    a.X.push_back(std::move(x));
    a.Y.push_back(std::move(y));
  }
  return a;
}

inline RatMatrix adjoint_matrix(const StructureConstants& f, size_t i) {
  size_t n = f.dim();
  RatMatrix x(n, n);
  for (size_t j = 0; j < n; ++j)
    for (size_t k = 0; k < n; ++k) x(j, k) = -f(i, j, k);
  return x;
}

struct MixedJacobiReport {
  bool pass = false;
  Tensor4 residual;  // residual(i,j,k,l): lhs - rhs of the mixed relation, fd indices (i,j) up
};

// f_kl^m fd^ij_m = f_mk^i fd^jm_l - f_ml^i fd^jm_k - f_mk^j fd^im_l + f_ml^j fd^im_k
// fd(i,j,m) stores fd^{ij}_m.
inline MixedJacobiReport mixed_jacobi_check(const StructureConstants& f, const StructureConstants& fd) {
  if (f.dim() != fd.dim()) throw InputError("mixed_jacobi_check: dimension mismatch");
  f.require_antisymmetric("mixed_jacobi_check");
  fd.require_antisymmetric("mixed_jacobi_check");
  size_t n = f.dim();
  MixedJacobiReport rep{true, Tensor4(n)};
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        for (size_t l = 0; l < n; ++l) {
          Rational s;
          for (size_t m = 0; m < n; ++m) {
            s += f(k, l, m) * fd(i, j, m);
            s -= f(m, k, i) * fd(j, m, l) - f(m, l, i) * fd(j, m, k) - f(m, k, j) * fd(i, m, l) +
                 f(m, l, j) * fd(i, m, k);
          }
          if (sgn(s) != 0) rep.pass = false;
          rep.residual(i, j, k, l) = s;
        }
  return rep;
}

// Same residual through the adjoint-matrix identity
// (Xd^i)^j_l Y^l = -(Xd^j)^T Y^i + Y^j Xd^i - Y^i Xd^j + (Xd^i)^T Y^j.
inline Tensor4 mixed_jacobi_matrix_residual(const StructureConstants& f, const StructureConstants& fd) {
  if (f.dim() != fd.dim()) throw InputError("mixed_jacobi_matrix_residual: dimension mismatch");
  size_t n = f.dim();
  AdjointSet a = adjoints(f), ad = adjoints(fd);
  Tensor4 out(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      RatMatrix lhs(n, n);
      for (size_t l = 0; l < n; ++l) lhs = lhs + ad.X[i](j, l) * a.Y[l];
      RatMatrix rhs = a.Y[j] * ad.X[i] - a.Y[i] * ad.X[j] + ad.X[i].transpose() * a.Y[j] -
                      ad.X[j].transpose() * a.Y[i];
      RatMatrix d = lhs - rhs;
      for (size_t k = 0; k < n; ++k)
        for (size_t l = 0; l < n; ++l) out(i, j, k, l) = d(k, l);
    }
  return out;
}

struct DoubleAlgebra {
  StructureConstants sc;  // basis X_1..X_n, Xd^1..Xd^n
  RatMatrix pairing;
};

inline DoubleAlgebra build_double(const StructureConstants& f, const StructureConstants& fd) {
  if (f.dim() != fd.dim()) throw InputError("build_double: dimension mismatch");
  f.require_antisymmetric("build_double");
  fd.require_antisymmetric("build_double");
  size_t n = f.dim(), N = 2 * n;
  DoubleAlgebra d{StructureConstants(N), RatMatrix(N, N)};
  for (size_t i = 0; i < n; ++i) {
    d.pairing(i, n + i) = 1;
    d.pairing(n + i, i) = 1;
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        d.sc(i, j, k) = f(i, j, k);
        d.sc(n + i, n + j, n + k) = fd(i, j, k);
        // [X_i, Xd^j] = fd^jk_i X_k + f_ki^j Xd^k
        d.sc.set_bracket(i, n + j, k, fd(j, k, i));
        d.sc.set_bracket(i, n + j, n + k, f(k, i, j));
      }
  }
  return d;
}

// <[Z,W],V> + <W,[Z,V]> for all basis triples
inline bool pairing_invariant(const DoubleAlgebra& d) {
  size_t N = d.sc.dim();
  for (size_t z = 0; z < N; ++z)
    for (size_t w = 0; w < N; ++w)
      for (size_t v = 0; v < N; ++v) {
        Rational s;
        for (size_t k = 0; k < N; ++k) s += d.sc(z, w, k) * d.pairing(k, v) + d.pairing(w, k) * d.sc(z, v, k);
        if (sgn(s) != 0) return false;
      }
  return true;
}

// d(i,j,k) = fd^{jk}_i, so delta(X_i) = d(i,j,k) X_j (x) X_k
inline Tensor3 cocommutator(const StructureConstants& fd) {
  fd.require_antisymmetric("cocommutator");
  size_t n = fd.dim();
  Tensor3 d(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) d(i, j, k) = fd(j, k, i);
  return d;
}

inline StructureConstants dual_from_cocommutator(const Tensor3& d) {
  StructureConstants fd(d.n);
  for (size_t i = 0; i < d.n; ++i)
    for (size_t j = 0; j < d.n; ++j)
      for (size_t k = 0; k < d.n; ++k) fd(j, k, i) = d(i, j, k);
  return fd;
}

// (dw)(X_i,X_j,X_k) = -w([X_i,X_j],X_k) + w([X_i,X_k],X_j) - w([X_j,X_k],X_i)
inline Tensor3 ce_differential(const RatMatrix& w, const StructureConstants& f) {
  size_t n = f.dim();
  if (w.rows() != n || w.cols() != n) throw InputError("ce_differential: shape mismatch");
  if (!(w.transpose() == Rational(-1) * w)) throw InputError("ce_differential: form not antisymmetric");
  Tensor3 out(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        Rational s;
        for (size_t m = 0; m < n; ++m) s += -f(i, j, m) * w(m, k) + f(i, k, m) * w(m, j) - f(j, k, m) * w(m, i);
        out(i, j, k) = s;
      }
  return out;
}

// e^a ^ e^b as an antisymmetric matrix (zero-based a, b)
inline RatMatrix wedge_form(size_t n, size_t a, size_t b, const Rational& c = 1) {
  RatMatrix w(n, n);
  w(a, b) += c;
  w(b, a) -= c;
  return w;
}

struct SymplecticSearch {
  std::vector<RatMatrix> closed_basis;
  bool found = false;
  RatMatrix witness;
  size_t max_rank = 0;
  size_t tries = 0;
};

inline SymplecticSearch find_symplectic(const StructureConstants& f, unsigned seed = 0) {
  size_t n = f.dim();
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t a = 0; a < n; ++a)
    for (size_t b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  std::vector<std::array<size_t, 3>> triples;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t k = j + 1; k < n; ++k) triples.push_back({i, j, k});
  // linear map w -> dw, one column per basis 2-form
  RatMatrix L(triples.size(), pairs.size());
  for (size_t c = 0; c < pairs.size(); ++c) {
    Tensor3 dw = ce_differential(wedge_form(n, pairs[c].first, pairs[c].second), f);
    for (size_t r = 0; r < triples.size(); ++r) L(r, c) = dw(triples[r][0], triples[r][1], triples[r][2]);
  }
  SymplecticSearch out;
  for (auto& v : nullspace(L)) {
    RatMatrix w(n, n);
    for (size_t c = 0; c < pairs.size(); ++c)
      if (sgn(v[c]) != 0) w = w + wedge_form(n, pairs[c].first, pairs[c].second, v[c]);
    out.closed_basis.push_back(std::move(w));
  }
  size_t kdim = out.closed_basis.size();
  auto try_coeffs = [&](const std::vector<Rational>& c) {
    RatMatrix w(n, n);
    for (size_t t = 0; t < kdim; ++t)
      if (sgn(c[t]) != 0) w = w + c[t] * out.closed_basis[t];
    ++out.tries;
    size_t rk = rank(w);
    out.max_rank = std::max(out.max_rank, rk);
    if (rk == n) {
      out.found = true;
      out.witness = w;
    }
    return out.found;
  };
  if (kdim == 0) return out;
  // odometer over {-2..2}^kdim, ordered so small coefficient vectors come first
  for (int bound = 1; bound <= 2 && !out.found; ++bound) {
    std::vector<int> c(kdim, -bound);
    while (true) {
      int mx = 0;
      for (int x : c) mx = std::max(mx, std::abs(x));
      if (mx == bound) {
        std::vector<Rational> cr(kdim);
        for (size_t t = 0; t < kdim; ++t) cr[t] = c[t];
        if (try_coeffs(cr)) break;
      }
      size_t p = 0;
      while (p < kdim && c[p] == bound) c[p++] = -bound;
      if (p == kdim) break;
      ++c[p];
    }
  }
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 17);
  for (int t = 0; t < 30 && !out.found; ++t) {
    std::vector<Rational> cr(kdim);
    for (auto& x : cr) x = rat(num(rng), den(rng));
    try_coeffs(cr);
  }
  return out;
}

}  // namespace bialg

#endif  // BIALG_STRUCTURE_HPP
