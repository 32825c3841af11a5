#ifndef BIALG_LINALG_HPP
#define BIALG_LINALG_HPP

#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"

namespace bialg {

// Dense row-major matrix over an exact field T (Rational or ComplexRational).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  T& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
  const T& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

  bool is_zero() const {
    for (auto& v : a_)
      if (!(v == T(0))) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw InputError("matrix product: shape mismatch");
    Matrix m(a.r_, b.c_);
    for (size_t i = 0; i < a.r_; ++i)
      for (size_t k = 0; k < a.c_; ++k) {
        const T& x = a(i, k);
        if (x == T(0)) continue;
        for (size_t j = 0; j < b.c_; ++j) m(i, j) += x * b(k, j);
      }
    return m;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw InputError("matrix sum: shape mismatch");
    for (size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw InputError("matrix difference: shape mismatch");
    for (size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
    return a;
  }
  friend Matrix operator*(const T& s, Matrix a) {
    for (auto& v : a.a_) v = s * v;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }

 private:
  size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using RatMatrix = Matrix<Rational>;
using CRMatrix = Matrix<ComplexRational>;

template <class T>
inline bool is_zero_value(const T& v) {
  return v == T(0);
}

// In-place reduced row echelon form; returns pivot columns.
template <class T>
std::vector<size_t> rref(Matrix<T>& m) {
  std::vector<size_t> piv;
  size_t row = 0;
  for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    size_t p = row;
    while (p < m.rows() && is_zero_value(m(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    T inv = T(1) / m(row, col);
    for (size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero_value(m(i, col))) continue;
      T f = m(i, col);
      for (size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    piv.push_back(col);
    ++row;
  }
  return piv;
}

template <class T>
size_t rank(Matrix<T> m) {
  return rref(m).size();
}

// Basis of {v : A v = 0}, as columns of a vector list.
template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> a) {
  auto piv = rref(a);
  std::vector<bool> is_piv(a.cols(), false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<std::vector<T>> basis;
  for (size_t free = 0; free < a.cols(); ++free) {
    if (is_piv[free]) continue;
    std::vector<T> v(a.cols());
    v[free] = T(1);
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T>
struct AffineSolution {
  bool consistent = false;
  std::vector<T> particular;
  std::vector<std::vector<T>> kernel;
};

// Solve A v = b exactly; particular solution has free variables set to 0.
template <class T>
AffineSolution<T> solve_affine(const Matrix<T>& a, const std::vector<T>& b) {
  if (b.size() != a.rows()) throw InputError("solve_affine: shape mismatch");
  Matrix<T> aug(a.rows(), a.cols() + 1);
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto piv = rref(aug);
  AffineSolution<T> s;
  if (!piv.empty() && piv.back() == a.cols()) return s;
  s.consistent = true;
  s.particular.assign(a.cols(), T(0));
  for (size_t r = 0; r < piv.size(); ++r) s.particular[piv[r]] = aug(r, a.cols());
  s.kernel = nullspace(a);
  return s;
}

template <class T>
T det(Matrix<T> m) {
  if (m.rows() != m.cols()) throw InputError("det of non-square matrix");
  T d(1);
  size_t n = m.rows();
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && is_zero_value(m(p, c))) ++p;
    if (p == n) return T(0);
    if (p != c) {
      for (size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d = d * m(c, c);
    T inv = T(1) / m(c, c);
    for (size_t i = c + 1; i < n; ++i) {
      if (is_zero_value(m(i, c))) continue;
      T f = m(i, c) * inv;
      for (size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m) {
  size_t n = m.rows();
  if (n != m.cols()) throw InputError("inverse of non-square matrix");
  Matrix<T> aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = T(1);
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  Matrix<T> inv(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

template <class T>
std::string to_string(const Matrix<T>& m) {
  std::string s = "[";
  for (size_t i = 0; i < m.rows(); ++i) {
    s += i ? "; " : "";
    for (size_t j = 0; j < m.cols(); ++j) s += (j ? " " : "") + to_string(m(i, j));
  }
  return s + "]";
}

}  // namespace bialg

#endif  // BIALG_LINALG_HPP
