#ifndef BIALG_EQUIVALENCE_HPP
#define BIALG_EQUIVALENCE_HPP

#include <Eigen/Dense>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include <algorithm>
#include <cmath>
#include <future>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "structure.hpp"

namespace bialg {

enum class WitnessRole { C, A, B };

struct WitnessMatrix {
  RatMatrix m;
  WitnessRole role = WitnessRole::B;
};

namespace detail {

inline RatMatrix checked_inverse(const RatMatrix& m, const char* who) {
  if (m.rows() != m.cols()) throw InputError(std::string(who) + ": matrix is not square");
  auto inv = inverse(m);
  if (!inv) throw InputError(std::string(who) + ": singular matrix");
  return *inv;
}

}  // namespace detail

// Structure constants in the basis Y_i = B(i,k) X_k:
// [Y_i,Y_j] = B(i,k) B(j,l) f(k,l,m) X_m = g(i,j,n) Y_n.
inline StructureConstants transform(const StructureConstants& f, const RatMatrix& B) {
  RatMatrix Binv = detail::checked_inverse(B, "transform");
  size_t n = f.dim();
  StructureConstants g(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      std::vector<Rational> v(n);
      for (size_t k = 0; k < n; ++k) {
        if (sgn(B(i, k)) == 0) continue;
        for (size_t l = 0; l < n; ++l) {
          if (sgn(B(j, l)) == 0) continue;
          Rational w = B(i, k) * B(j, l);
          for (size_t m = 0; m < n; ++m)
            if (sgn(f(k, l, m)) != 0) v[m] += w * f(k, l, m);
        }
      }
      for (size_t m = 0; m < n; ++m) {
        if (sgn(v[m]) == 0) continue;
        for (size_t q = 0; q < n; ++q) g(i, j, q) += v[m] * Binv(m, q);
      }
    }
  return g;
}

// M (M^i_k Y^k_src) = Y^i_dst M for all i, with Y the adjoint matrices.
// Equivalent to: the basis M(i,k) e_k of src has the constants of dst.
inline bool matrix_relation_holds(const RatMatrix& M, const StructureConstants& src, const StructureConstants& dst) {
  return transform(src, M) == dst;
}

// C (C_ij Xd^j_target) = Xd^i_fd C
inline bool verify_isomorphism(const RatMatrix& C, const StructureConstants& fd, const StructureConstants& target) {
  return matrix_relation_holds(C, target, fd);
}

// A(X_i) = A(i,k) X_k preserves every bracket
inline bool verify_automorphism(const RatMatrix& A, const StructureConstants& f) {
  return matrix_relation_holds(A, f, f);
}

// T^t is an automorphism of f and T carries fd1 to fd2
inline bool verify_bialgebra_equivalence(const RatMatrix& T, const StructureConstants& f, const StructureConstants& fd1,
                                         const StructureConstants& fd2) {
  detail::checked_inverse(T, "verify_bialgebra_equivalence");
  return verify_automorphism(T.transpose(), f) && matrix_relation_holds(T, fd1, fd2);
}

// ---------------------------------------------------------------- search

enum class WitnessKind { Iso, Auto, Equiv };

struct SearchOptions {
  unsigned seed = 0;
  int restarts = 200;
  int jobs = 1;
  long max_den = 10000;
};

struct SearchResult {
  std::optional<RatMatrix> witness;
  int tries = 0;
  std::string message;  // "none found (n tries)" on failure
};

namespace detail {

// One quadratic relation M(i,k) M(j,l) src(k,l,m) = dst(i,j,q) M(q,m), per (i<j, m).
struct RelationSpec {
  StructureConstants src, dst;
  bool transposed = false;  // apply to M^t
};

inline double relation_residuals(const std::vector<RelationSpec>& rels, const Eigen::Matrix4d& M, double* out) {
  double worst = 0;
  size_t p = 0;
  for (auto& r : rels) {
    Eigen::Matrix4d A = r.transposed ? Eigen::Matrix4d(M.transpose()) : M;
    for (size_t i = 0; i < 4; ++i)
      for (size_t j = i + 1; j < 4; ++j)
        for (size_t m = 0; m < 4; ++m) {
          double v = 0;
          for (size_t k = 0; k < 4; ++k)
            for (size_t l = 0; l < 4; ++l) {
              double s = to_double(r.src(k, l, m));
              if (s != 0) v += A(i, k) * A(j, l) * s;
            }
          for (size_t q = 0; q < 4; ++q) {
            double d = to_double(r.dst(i, j, q));
            if (d != 0) v -= d * A(q, m);
          }
          if (out) out[p] = v;
          ++p;
          worst = std::max(worst, std::abs(v));
        }
  }
  return worst;
}

inline size_t relation_count(const std::vector<RelationSpec>& rels) { return rels.size() * 6 * 4; }

// Free entries vary; fixed ones keep their snapped values.
struct WitnessFunctor {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  const std::vector<RelationSpec>* rels;
  Eigen::Matrix4d base;
  std::vector<int> free;
  bool det_penalty = true;

  int inputs() const { return static_cast<int>(free.size()); }
  int values() const { return static_cast<int>(relation_count(*rels) + (det_penalty ? 1 : 0)); }

  Eigen::Matrix4d assemble(const Eigen::VectorXd& x) const {
    Eigen::Matrix4d M = base;
    for (size_t t = 0; t < free.size(); ++t) M(free[t] / 4, free[t] % 4) = x[t];
    return M;
  }
  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& fv) const {
    Eigen::Matrix4d M = assemble(x);
    relation_residuals(*rels, M, fv.data());
    if (det_penalty) {
      double d = M.determinant();
      fv[fv.size() - 1] = 1e-2 / (std::abs(d) + 1e-12);
    }
    return 0;
  }
};

inline double polish(const std::vector<RelationSpec>& rels, Eigen::Matrix4d& M, const std::vector<int>& free,
                     bool det_penalty) {
  if (free.empty()) return relation_residuals(rels, M, nullptr);
  WitnessFunctor fn{&rels, M, free, det_penalty};
  Eigen::VectorXd x(free.size());
  for (size_t t = 0; t < free.size(); ++t) x[t] = M(free[t] / 4, free[t] % 4);
  Eigen::NumericalDiff<WitnessFunctor> nd(fn);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<WitnessFunctor>> lm(nd);
  lm.parameters.maxfev = 4000;
  lm.parameters.xtol = 1e-14;
  lm.parameters.ftol = 1e-14;
  lm.minimize(x);
  M = fn.assemble(x);
  return relation_residuals(rels, M, nullptr);
}

inline std::optional<RatMatrix> exact_candidate(const Eigen::Matrix4d& M, long max_den) {
  RatMatrix R(4, 4);
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) {
      if (!std::isfinite(M(i, j))) return std::nullopt;
      R(i, j) = rationalize(M(i, j), max_den);
    }
  if (!inverse(R)) return std::nullopt;
  return R;
}

// Snap entries greedily (zeros, then integers, then small fractions), re-polishing the rest.
inline Eigen::Matrix4d snap(const std::vector<RelationSpec>& rels, Eigen::Matrix4d M, double tol) {
  std::vector<int> free(16);
  for (int t = 0; t < 16; ++t) free[t] = t;
  auto try_fix = [&](auto target) {
    std::vector<int> order = free;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      double va = std::abs(M(a / 4, a % 4) - target(M(a / 4, a % 4)));
      double vb = std::abs(M(b / 4, b % 4) - target(M(b / 4, b % 4)));
      return va < vb;
    });
    for (int e : order) {
      double v = M(e / 4, e % 4), t = target(v);
      if (std::abs(v - t) > 0.25) continue;
      Eigen::Matrix4d trial = M;
      trial(e / 4, e % 4) = t;
      std::vector<int> rest;
      for (int q : free)
        if (q != e) rest.push_back(q);
      double res = polish(rels, trial, rest, false);
      if (res < tol && std::abs(trial.determinant()) > 1e-6) {
        M = trial;
        free = rest;
      }
    }
  };
  try_fix([](double) { return 0.0; });
  try_fix([](double v) { return std::round(v); });
  try_fix([](double v) { return std::round(2 * v) / 2; });
  try_fix([](double v) { return std::round(3 * v) / 3; });
  return M;
}

inline std::optional<RatMatrix> single_restart(const std::vector<RelationSpec>& rels, unsigned seed, long max_den,
                                               const std::function<bool(const RatMatrix&)>& exact_ok) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd(0, 1);
  Eigen::Matrix4d M;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) M(i, j) = nd(rng);
  std::vector<int> all(16);
  for (int t = 0; t < 16; ++t) all[t] = t;
  polish(rels, M, all, true);
  double res = polish(rels, M, all, false);
  if (!(res < 1e-8) || std::abs(M.determinant()) < 1e-6) return std::nullopt;
  M = snap(rels, M, 1e-9);
  auto cand = exact_candidate(M, max_den);
  if (cand && exact_ok(*cand)) return cand;
  return std::nullopt;
}

}  // namespace detail

// kind Iso: C with verify_isomorphism(C, a, b); Auto: A with verify_automorphism(A, a);
// Equiv: T with verify_bialgebra_equivalence(T, a, b, c).
inline SearchResult search_witness(WitnessKind kind, const StructureConstants& a, const StructureConstants& b = {},
                                   const StructureConstants& c = {}, const SearchOptions& opt = {}) {
  std::vector<detail::RelationSpec> rels;
  std::function<bool(const RatMatrix&)> ok;
  switch (kind) {
    case WitnessKind::Iso:
      rels.push_back({b, a, false});
      ok = [&](const RatMatrix& m) { return verify_isomorphism(m, a, b); };
      break;
    case WitnessKind::Auto:
      rels.push_back({a, a, false});
      ok = [&](const RatMatrix& m) { return verify_automorphism(m, a); };
      break;
    case WitnessKind::Equiv:
      rels.push_back({a, a, true});
      rels.push_back({b, c, false});
      ok = [&](const RatMatrix& m) { return verify_bialgebra_equivalence(m, a, b, c); };
      break;
  }
  SearchResult out;
  RatMatrix I = RatMatrix::identity(4);
  if (ok(I)) {
    out.witness = I;
    out.tries = 0;
    return out;
  }
  int jobs = std::max(1, opt.jobs);
  for (int base = 0; base < opt.restarts && !out.witness; base += jobs) {
    int batch = std::min(jobs, opt.restarts - base);
    std::vector<std::future<std::optional<RatMatrix>>> fut;
    for (int t = 0; t < batch; ++t) {
      unsigned s = opt.seed * 7919u + static_cast<unsigned>(base + t);
      fut.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                               [&, s] { return detail::single_restart(rels, s, opt.max_den, ok); }));
    }
    for (int t = 0; t < batch; ++t) {
      auto r = fut[t].get();
      ++out.tries;
      if (r && !out.witness) out.witness = r;
    }
  }
  if (!out.witness) out.message = "none found (" + std::to_string(out.tries) + " tries)";
  return out;
}

}  // namespace bialg

#endif  // BIALG_EQUIVALENCE_HPP
