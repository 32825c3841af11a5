#ifndef BIALG_FRAMES_HPP
#define BIALG_FRAMES_HPP

#include <string>
#include <vector>

#include "cf_text.hpp"
#include "matexp.hpp"
#include "structure.hpp"

namespace bialg {

// Chart g = e^{x1 X1} e^{x2 X2} e^{x3 X3} e^{x4 X4}.
// Rows of XR / XL are the fields, columns the d1..d4 coefficients.
struct InvariantFrame {
  CFMatrix Rmat, Lmat, XR, XL;
};

namespace detail {

// exp(s * x_m * X_m) for the adjoint matrix of basis element m
inline CFMatrix adjoint_exp(const StructureConstants& f, size_t m, int s) {
  return cf_matexp(Rational(s) * adjoint_matrix(f, m), m);
}

}  // namespace detail

// V and W: the right and left Maurer-Cartan coframes of the chart, XR = V^-1, XL = W^-1
struct ChartCoframes {
  CFMatrix V, W;
};

inline ChartCoframes chart_coframes(const StructureConstants& f) {
  if (f.dim() != kCoords) throw InputError("invariant_frame: algebra must be 4-dimensional");
  size_t n = kCoords;
  std::vector<CFMatrix> em(n), ep(n);
  for (size_t m = 0; m < n; ++m) {
    em[m] = detail::adjoint_exp(f, m, -1);
    ep[m] = detail::adjoint_exp(f, m, 1);
  }
  // row j of V: e_j E_{j-1}(-x) ... E_0(-x); row j of W: e_j E_{j+1}(x) ... E_{n-1}(x)
  CFMatrix V(n, n), W(n, n);
  for (size_t j = 0; j < n; ++j) {
    CFMatrix row(1, n), wrow(1, n);
    row(0, j) = CF(1);
    wrow(0, j) = CF(1);
    for (size_t m = j; m-- > 0;) row = row * em[m];
    for (size_t m = j + 1; m < n; ++m) wrow = wrow * ep[m];
    for (size_t k = 0; k < n; ++k) {
      V(j, k) = row(0, k);
      W(j, k) = wrow(0, k);
    }
  }
  return {V, W};
}

inline InvariantFrame invariant_frame(const StructureConstants& f) {
  auto [V, W] = chart_coframes(f);
  return {V.transpose(), W.transpose(), cf_inverse(V), cf_inverse(W)};
}

inline VectorField frame_row(const CFMatrix& m, size_t i) {
  VectorField v;
  for (size_t k = 0; k < kCoords; ++k) v[k] = m(i, k);
  return v;
}

// [U,V]^k = U^l d_l V^k - V^l d_l U^k
inline VectorField commutator(const VectorField& u, const VectorField& v) {
  VectorField w;
  for (size_t k = 0; k < kCoords; ++k)
    for (size_t l = 0; l < kCoords; ++l) {
      if (!u[l].is_zero()) w[k] += u[l] * v[k].diff(l);
      if (!v[l].is_zero()) w[k] -= v[l] * u[k].diff(l);
    }
  return w;
}

struct FrameBracketReport {
  bool left = true, right = true, mixed = true;
  std::vector<std::string> failures;
  bool pass() const { return left && right && mixed; }
};

// [XL_i, XL_j] = f_ij^k XL_k, [XR_i, XR_j] = -f_ij^k XR_k, [XL_i, XR_j] = 0
inline FrameBracketReport frame_bracket_check(const InvariantFrame& fr, const StructureConstants& f) {
  FrameBracketReport rep;
  size_t n = kCoords;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      VectorField l = commutator(frame_row(fr.XL, i), frame_row(fr.XL, j));
      VectorField r = commutator(frame_row(fr.XR, i), frame_row(fr.XR, j));
      VectorField m = commutator(frame_row(fr.XL, i), frame_row(fr.XR, j));
      for (size_t k = 0; k < n; ++k) {
        ComplexRational c(f(i, j, k));
        for (size_t q = 0; q < n; ++q) {
          l[q] -= c * fr.XL(k, q);
          r[q] += c * fr.XR(k, q);
        }
      }
      auto nz = [](const VectorField& v) {
        for (auto& c : v)
          if (!c.is_zero()) return true;
        return false;
      };
      std::string ij = std::to_string(i + 1) + "," + std::to_string(j + 1);
      if (nz(l)) {
        rep.left = false;
        rep.failures.push_back("[XL" + std::to_string(i + 1) + ",XL" + std::to_string(j + 1) + "] residual " + render_vf(l));
      }
      if (nz(r)) {
        rep.right = false;
        rep.failures.push_back("[XR" + std::to_string(i + 1) + ",XR" + std::to_string(j + 1) + "] residual " + render_vf(r));
      }
      if (nz(m)) {
        rep.mixed = false;
        rep.failures.push_back("[XL" + std::to_string(i + 1) + ",XR" + std::to_string(j + 1) + "] residual " + render_vf(m));
      }
    }
  return rep;
}

namespace detail {

inline CF act(const VectorField& u, const CF& g) {
  CF out;
  for (size_t l = 0; l < kCoords; ++l)
    if (!u[l].is_zero()) out += u[l] * g.diff(l);
  return out;
}

inline VectorField scaled(const VectorField& u, const CF& g) {
  VectorField w;
  for (size_t k = 0; k < kCoords; ++k) w[k] = u[k] * g;
  return w;
}

inline VectorField plus(VectorField a, const VectorField& b, int sign = 1) {
  for (size_t k = 0; k < kCoords; ++k) a[k] += sign > 0 ? b[k] : -b[k];
  return a;
}

}  // namespace detail

// The same relations when the chart determinant is not a unit, so XR = adj(V)/det V leaves
// the closed-function class. With A = adj(V) = D XR, [XR_i,XR_j] = c XR_k becomes
//   D [A_i,A_j] - A_i(D) A_j + A_j(D) A_i = D^2 c A_k,
// and [XL_i,XR_j] = 0 becomes Dl Dr [L_i,R_j] - Dl L_i(Dr) R_j + Dr R_j(Dl) L_i = 0.
// `chart` builds the coordinates, `claimed` supplies the c.
inline FrameBracketReport scaled_frame_bracket_check(const StructureConstants& chart, const StructureConstants& claimed) {
  using detail::act;
  using detail::plus;
  using detail::scaled;
  auto [V, W] = chart_coframes(chart);
  CFMatrix R = cf_adjugate(V), L = cf_adjugate(W);
  CF dr = cf_det(V), dl = cf_det(W);
  FrameBracketReport rep;
  size_t n = kCoords;
  auto nz = [](const VectorField& v) {
    for (auto& c : v)
      if (!c.is_zero()) return true;
    return false;
  };
  auto same_side = [&](const CFMatrix& A, const CF& D, int sign, size_t i, size_t j) {
    VectorField ai = frame_row(A, i), aj = frame_row(A, j);
    VectorField lhs = plus(plus(scaled(commutator(ai, aj), D), scaled(aj, act(ai, D)), -1), scaled(ai, act(aj, D)));
    CF d2 = D * D;
    for (size_t k = 0; k < n; ++k) {
      if (sgn(claimed(i, j, k)) == 0) continue;
      CF c = d2 * CF(ComplexRational(sign * claimed(i, j, k)));
      lhs = plus(lhs, scaled(frame_row(A, k), c), -1);
    }
    return lhs;
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      std::string ij = std::to_string(i + 1) + "," + std::to_string(j + 1);
      if (nz(same_side(L, dl, 1, i, j))) {
        rep.left = false;
        rep.failures.push_back("scaled [XL" + std::to_string(i + 1) + ",XL" + std::to_string(j + 1) + "] fails");
      }
      if (nz(same_side(R, dr, -1, i, j))) {
        rep.right = false;
        rep.failures.push_back("scaled [XR" + std::to_string(i + 1) + ",XR" + std::to_string(j + 1) + "] fails");
      }
      VectorField li = frame_row(L, i), rj = frame_row(R, j);
      VectorField m = plus(plus(scaled(commutator(li, rj), dl * dr), scaled(rj, dl * act(li, dr)), -1),
                           scaled(li, dr * act(rj, dl)));
      if (nz(m)) {
        rep.mixed = false;
        rep.failures.push_back("scaled [XL" + std::to_string(i + 1) + ",XR" + std::to_string(j + 1) + "] fails");
      }
    }
  return rep;
}

// frame relations for f, through the scaled form when the frame is not closed-form
inline FrameBracketReport frame_bracket_check(const StructureConstants& f, bool* scaled_used = nullptr) {
  if (scaled_used) *scaled_used = false;
  try {
    return frame_bracket_check(invariant_frame(f), f);
  } catch (const NonUnitDeterminant&) {
    if (scaled_used) *scaled_used = true;
    return scaled_frame_bracket_check(f, f);
  }
}

// Blocks of M = exp(x1 XD_1) exp(x2 XD_2) exp(x3 XD_3) exp(x4 XD_4) on the double, rows X then Xd.
struct DoubleAdjointBlocks {
  CFMatrix a, b, d;
  bool upper_right_zero = false;
};

inline DoubleAdjointBlocks double_adjoint(const StructureConstants& f, const StructureConstants& fd) {
  DoubleAlgebra D = build_double(f, fd);
  size_t n = kCoords, N = 2 * n;
  CFMatrix M = to_cf(RatMatrix::identity(N));
  for (size_t m = 0; m < n; ++m) M = M * cf_matexp(adjoint_matrix(D.sc, m), m);
  DoubleAdjointBlocks out{CFMatrix(n, n), CFMatrix(n, n), CFMatrix(n, n), true};
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      out.a(i, j) = M(i, j);
      out.b(i, j) = M(n + i, j);
      out.d(i, j) = M(n + i, n + j);
      if (!M(i, n + j).is_zero()) out.upper_right_zero = false;
    }
  return out;
}

inline std::string render_frame_row(const CFMatrix& m, size_t i) { return render_vf(frame_row(m, i)); }

}  // namespace bialg

#endif  // BIALG_FRAMES_HPP
