#ifndef BIALG_TEST_HELPERS_HPP
#define BIALG_TEST_HELPERS_HPP

#include <array>
#include <initializer_list>
#include <random>
#include <tuple>
#include <vector>

#include "bialg/structure.hpp"

namespace testing_util {

using bialg::Rational;
using bialg::StructureConstants;

struct B {
  int i, j, k;
  Rational c;
};

// 1-based bracket list: {i, j, k, c} means [X_i, X_j] += c X_k
inline StructureConstants alg(std::initializer_list<B> br, size_t dim = 4) {
  StructureConstants f(dim);
  for (auto& b : br) {
    f(b.i - 1, b.j - 1, b.k - 1) += b.c;
    f(b.j - 1, b.i - 1, b.k - 1) -= b.c;
  }
  return f;
}

// naive bracket of coefficient vectors, the oracle side of most checks
inline std::vector<Rational> br(const StructureConstants& f, const std::vector<Rational>& u,
                                const std::vector<Rational>& v) {
  size_t n = f.dim();
  std::vector<Rational> w(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (sgn(u[i]) == 0 || sgn(v[j]) == 0) continue;
      for (size_t k = 0; k < n; ++k) w[k] += u[i] * v[j] * f(i, j, k);
    }
  return w;
}

inline std::vector<Rational> unit(size_t n, size_t i) {
  std::vector<Rational> e(n);
  e[i] = 1;
  return e;
}

inline std::vector<Rational> add3(const std::vector<Rational>& a, const std::vector<Rational>& b,
                                  const std::vector<Rational>& c) {
  std::vector<Rational> s(a.size());
  for (size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i] + c[i];
  return s;
}

inline Rational rnd_small(std::mt19937& rng, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> d(lo, hi);
  return Rational(d(rng));
}

// Fixed algebras used across module tests.
inline StructureConstants A41() { return alg({{2, 4, 1, 1}, {3, 4, 2, 1}}); }
inline StructureConstants A47() {
  return alg({{1, 4, 1, 2}, {2, 3, 1, 1}, {2, 4, 2, 1}, {3, 4, 2, 1}, {3, 4, 3, 1}});
}
inline StructureConstants A47i() {
  Rational h = bialg::rat(1, 2);
  return alg({{1, 2, 2, h}, {1, 2, 3, -h}, {1, 3, 3, h}, {1, 4, 4, 1}, {2, 3, 4, 2}});
}
inline StructureConstants IIR() { return alg({{2, 3, 1, 1}}); }
inline StructureConstants VII0R() { return alg({{1, 3, 2, -1}, {2, 3, 1, 1}}); }
inline StructureConstants VI0R() { return alg({{1, 3, 2, 1}, {2, 3, 1, 1}}); }

}  // namespace testing_util

#endif
