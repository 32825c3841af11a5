#ifndef BIALG_POISSON_HPP
#define BIALG_POISSON_HPP

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "frames.hpp"
#include "rmatrix.hpp"

namespace bialg {

// P(i,j) = {x_i, x_j}
struct PoissonBivector {
  CFMatrix P;
  std::string provenance;
};

// P = XL^t r XL - XR^t r XR with the antisymmetric part of r
inline PoissonBivector sklyanin_bivector(const InvariantFrame& fr, const RatMatrix& r) {
  CFMatrix ra = to_cf(antisym_part(r));
  return {fr.XL.transpose() * ra * fr.XL - fr.XR.transpose() * ra * fr.XR, "sklyanin"};
}

// P = XR^t (-b a^{-1}) XR
inline PoissonBivector pi_bivector(const DoubleAdjointBlocks& bl, const InvariantFrame& fr) {
  CFMatrix pi = bl.b * cf_inverse(bl.a);
  CFMatrix neg(pi.rows(), pi.cols());
  for (size_t i = 0; i < pi.rows(); ++i)
    for (size_t j = 0; j < pi.cols(); ++j) neg(i, j) = -pi(i, j);
  return {fr.XR.transpose() * neg * fr.XR, "pi"};
}

inline bool is_antisymmetric(const CFMatrix& P) {
  for (size_t i = 0; i < P.rows(); ++i)
    for (size_t j = 0; j < P.cols(); ++j)
      if (!(P(i, j) + P(j, i)).is_zero()) return false;
  return true;
}

inline bool vanishes_at_origin(const CFMatrix& P) {
  for (size_t i = 0; i < P.rows(); ++i)
    for (size_t j = 0; j < P.cols(); ++j)
      if (!P(i, j).at_origin().is_zero()) return false;
  return true;
}

struct PoissonJacobiReport {
  bool pass = true;
  std::vector<std::array<size_t, 3>> failing;  // (i,j,k) with a nonzero residual
  std::vector<CF> residual;                    // same order as failing
};

// J^{ijk} = sum_l P^{il} d_l P^{jk} + P^{jl} d_l P^{ki} + P^{kl} d_l P^{ij}
inline PoissonJacobiReport poisson_jacobi_check(const CFMatrix& P) {
  size_t n = kCoords;
  std::vector<CFMatrix> dP;
  for (size_t l = 0; l < n; ++l) dP.push_back(cf_diff(P, l));
  PoissonJacobiReport rep;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t k = j + 1; k < n; ++k) {
        CF J;
        for (size_t l = 0; l < n; ++l) {
          if (!P(i, l).is_zero() && !dP[l](j, k).is_zero()) J += P(i, l) * dP[l](j, k);
          if (!P(j, l).is_zero() && !dP[l](k, i).is_zero()) J += P(j, l) * dP[l](k, i);
          if (!P(k, l).is_zero() && !dP[l](i, j).is_zero()) J += P(k, l) * dP[l](i, j);
        }
        if (!J.is_zero()) {
          rep.pass = false;
          rep.failing.push_back({i, j, k});
          rep.residual.push_back(J);
        }
      }
  return rep;
}

// d_k P^{ij}(0) = fd^{ij}_k exactly
inline bool linearization_check(const CFMatrix& P, const StructureConstants& fd, std::string* why = nullptr) {
  for (size_t k = 0; k < kCoords; ++k) {
    CFMatrix d = cf_diff(P, k);
    for (size_t i = 0; i < kCoords; ++i)
      for (size_t j = 0; j < kCoords; ++j)
        if (!(d(i, j).at_origin() == ComplexRational(fd(i, j, k)))) {
          if (why)
            *why = "d" + std::to_string(k + 1) + " P(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                   ")(0) = " + to_string(d(i, j).at_origin()) + ", expected " + to_string(fd(i, j, k));
          return false;
        }
  }
  return true;
}

inline CF pfaffian(const CFMatrix& P) { return P(0, 1) * P(2, 3) - P(0, 2) * P(1, 3) + P(0, 3) * P(1, 2); }

using Point4 = std::array<double, kCoords>;

inline Eigen::Matrix4d eval_matrix(const CFMatrix& P, const Point4& x) {
  Eigen::Matrix4d m;
  for (size_t i = 0; i < kCoords; ++i)
    for (size_t j = 0; j < kCoords; ++j) m(i, j) = P(i, j).eval(x);
  return m;
}

struct SymplecticReport {
  bool symplectic = false;
  size_t rank = 0;          // rank of P at the witness point
  Point4 witness{};
  double pf_value = 0;      // Pfaffian at the witness
  bool exact = false;       // Pfaffian value certified in exact arithmetic
  Eigen::Matrix4d omega;    // Omega = -P^{-1} at the witness, so Omega P = -I
  bool closed = false;      // dOmega = 0 at the sample points
  double closed_residual = 0;
};

using RatPoint4 = std::array<Rational, kCoords>;

// x* first, then the fallbacks
inline std::vector<RatPoint4> generic_points() {
  return {RatPoint4{rat(1, 3), rat(1, 5), rat(1, 7), rat(1, 11)}, RatPoint4{rat(-1, 2), rat(2, 3), rat(3, 7), rat(-5, 13)},
          RatPoint4{rat(7, 10), rat(-3, 10), rat(9, 10), rat(9, 20)}, RatPoint4{rat(-4, 5), rat(-3, 5), rat(1, 4), rat(7, 20)},
          RatPoint4{rat(13, 10), rat(11, 20), rat(-11, 10), rat(3, 5)}, RatPoint4{rat(3, 20), rat(-6, 5), rat(-2, 5), rat(-9, 10)}};
}

inline Point4 to_point(const RatPoint4& x) {
  Point4 p;
  for (size_t i = 0; i < kCoords; ++i) p[i] = to_double(x[i]);
  return p;
}

// Omega = -P^{-1}; closedness through d_l Omega = Omega (d_l P) Omega.
inline double omega_closedness_residual(const CFMatrix& P, const std::vector<CFMatrix>& dP, const Point4& x) {
  Eigen::Matrix4d p = eval_matrix(P, x);
  Eigen::Matrix4d om = -p.inverse();
  std::array<Eigen::Matrix4d, kCoords> dom;
  for (size_t l = 0; l < kCoords; ++l) dom[l] = om * eval_matrix(dP[l], x) * om;
  double worst = 0;
  for (size_t i = 0; i < kCoords; ++i)
    for (size_t j = 0; j < kCoords; ++j)
      for (size_t k = 0; k < kCoords; ++k) {
        double v = dom[i](j, k) - dom[j](i, k) + dom[k](i, j);
        double scale = 1 + dom[i].cwiseAbs().maxCoeff() + dom[j].cwiseAbs().maxCoeff() + dom[k].cwiseAbs().maxCoeff();
        worst = std::max(worst, std::abs(v) / scale);
      }
  return worst;
}

inline SymplecticReport symplectic_classify(const CFMatrix& P, unsigned seed = 0, double margin = 1e-9) {
  SymplecticReport rep;
  CF pf = pfaffian(P);
  auto pts = generic_points();
  for (auto& xr : pts) {
    Point4 x = to_point(xr);
    double v = pf.eval(x);
    // exact whenever no exponential rate survives at the point
    ComplexRational exact_v;
    bool exact = pf.exact_at(xr, exact_v);
    if ((exact && !exact_v.is_zero()) || (!exact && std::abs(v) > margin)) {
      rep.symplectic = true;
      rep.rank = 4;
      rep.witness = x;
      rep.pf_value = v;
      rep.exact = exact;
      break;
    }
  }
  if (!rep.symplectic) {
    size_t best = 0;
    for (auto& x : pts) {
      Eigen::FullPivLU<Eigen::Matrix4d> lu(eval_matrix(P, to_point(x)));
      lu.setThreshold(1e-12);
      best = std::max<size_t>(best, static_cast<size_t>(lu.rank()));
    }
    rep.rank = best;
    return rep;
  }
  rep.omega = -eval_matrix(P, rep.witness).inverse();
  std::vector<CFMatrix> dP;
  for (size_t l = 0; l < kCoords; ++l) dP.push_back(cf_diff(P, l));
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  int checked = 0;
  for (int t = 0; checked < 20 && t < 200; ++t) {
    Point4 x{u(rng), u(rng), u(rng), u(rng)};
    if (std::abs(pf.eval(x)) < 1e-3) continue;
    rep.closed_residual = std::max(rep.closed_residual, omega_closedness_residual(P, dP, x));
    ++checked;
  }
  rep.closed = checked == 20 && rep.closed_residual < 1e-9;
  return rep;
}

inline std::string render_bracket(size_t i, size_t j) {
  return "{x" + std::to_string(i + 1) + ",x" + std::to_string(j + 1) + "}";
}

}  // namespace bialg

#endif  // BIALG_POISSON_HPP
