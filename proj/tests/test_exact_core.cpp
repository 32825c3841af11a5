#include <gtest/gtest.h>

#include <random>

#include "bialg/structure.hpp"
#include "helpers.hpp"

using namespace bialg;
using namespace testing_util;

namespace {

// brute-force Jacobiator [[a,b],c] + [[b,c],a] + [[c,a],b] on basis vectors
std::vector<Rational> jacobiator(const StructureConstants& f, size_t i, size_t j, size_t m) {
  size_t n = f.dim();
  auto a = unit(n, i), b = unit(n, j), c = unit(n, m);
  return add3(br(f, br(f, a, b), c), br(f, br(f, b, c), a), br(f, br(f, c, a), b));
}

// cocycle defect delta([X_k,X_l]) - ad_k delta(X_l) + ad_l delta(X_k), component (i,j)
Rational cocycle_defect(const StructureConstants& f, const StructureConstants& fd, size_t i, size_t j, size_t k,
                        size_t l) {
  size_t n = f.dim();
  auto delta = [&](size_t x, size_t a, size_t b) { return fd(a, b, x); };
  Rational lhs;
  for (size_t m = 0; m < n; ++m) lhs += f(k, l, m) * delta(m, i, j);
  auto act = [&](size_t y, size_t x) {
    // component (i,j) of [X_y (x) 1 + 1 (x) X_y, delta(X_x)]
    Rational s;
    for (size_t a = 0; a < n; ++a) s += f(y, a, i) * delta(x, a, j) + f(y, a, j) * delta(x, i, a);
    return s;
  };
  return lhs - act(k, l) + act(l, k);
}

StructureConstants random_sc(std::mt19937& rng, size_t n, double density) {
  StructureConstants f(n);
  std::bernoulli_distribution keep(density);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        if (keep(rng)) f.set_bracket(i, j, k, rnd_small(rng, -2, 2));
  return f;
}

}  // namespace

TEST(Jacobi, AbelianPasses) { EXPECT_TRUE(jacobi_check(StructureConstants(4)).pass); }

TEST(Jacobi, A41Passes) { EXPECT_TRUE(jacobi_check(A41()).pass); }

TEST(Jacobi, BrokenAlgebraFailsAt123) {
  auto f = alg({{1, 2, 1, 1}, {2, 3, 2, 1}});
  auto rep = jacobi_check(f);
  EXPECT_FALSE(rep.pass);
  bool nonzero = false;
  for (size_t q = 0; q < 4; ++q) nonzero = nonzero || sgn(rep.residual(0, 1, 2, q)) != 0;
  EXPECT_TRUE(nonzero);
}

TEST(Jacobi, ResidualMatchesBruteForce) {
  std::mt19937 rng(7);
  for (int t = 0; t < 20; ++t) {
    auto f = random_sc(rng, 4, 0.3);
    auto rep = jacobi_check(f);
    bool all_zero = true;
    for (size_t i = 0; i < 4; ++i)
      for (size_t j = 0; j < 4; ++j)
        for (size_t m = 0; m < 4; ++m) {
          auto J = jacobiator(f, i, j, m);
          for (size_t q = 0; q < 4; ++q) {
            EXPECT_EQ(rep.residual(i, j, m, q), J[q]);
            all_zero = all_zero && sgn(J[q]) == 0;
            EXPECT_EQ(rep.residual(i, j, m, q), -rep.residual(j, i, m, q));
          }
        }
    EXPECT_EQ(rep.pass, all_zero);
  }
}

TEST(Jacobi, NonAntisymmetricRejected) {
  StructureConstants f(4);
  f(0, 1, 2) = 1;
  EXPECT_THROW(jacobi_check(f), InputError);
}

TEST(MixedJacobi, ZeroDualPasses) {
  EXPECT_TRUE(mixed_jacobi_check(A41(), StructureConstants(4)).pass);
  EXPECT_TRUE(mixed_jacobi_check(A47(), StructureConstants(4)).pass);
}

TEST(MixedJacobi, A41WithIIRDualPasses) {
  auto fd = alg({{1, 2, 3, 1}, {1, 2, 4, 1}});
  EXPECT_TRUE(mixed_jacobi_check(A41(), fd).pass);
}

TEST(MixedJacobi, A41BadDualFailsWithUnitResidual) {
  auto fd = alg({{3, 4, 1, 1}});
  auto rep = mixed_jacobi_check(A41(), fd);
  EXPECT_FALSE(rep.pass);
  EXPECT_EQ(abs(rep.residual(2, 3, 1, 3)), 1);
  EXPECT_EQ(rep.residual(2, 3, 1, 3), cocycle_defect(A41(), fd, 2, 3, 1, 3));
}

TEST(MixedJacobi, LoopAndMatrixFormsAgreeAndMatchCocycleOracle) {
  std::mt19937 rng(11);
  for (int t = 0; t < 30; ++t) {
    auto f = t % 3 ? random_sc(rng, 4, 0.25) : A47();
    auto fd = random_sc(rng, 4, 0.25);
    auto rep = mixed_jacobi_check(f, fd);
    auto mat = mixed_jacobi_matrix_residual(f, fd);
    EXPECT_EQ(rep.residual, mat);
    for (size_t i = 0; i < 4; ++i)
      for (size_t j = 0; j < 4; ++j)
        for (size_t k = 0; k < 4; ++k)
          for (size_t l = 0; l < 4; ++l) EXPECT_EQ(rep.residual(i, j, k, l), cocycle_defect(f, fd, i, j, k, l));
  }
}

TEST(MixedJacobi, DimensionMismatch) {
  EXPECT_THROW(mixed_jacobi_check(StructureConstants(4), StructureConstants(8)), InputError);
}

TEST(Double, AbelianDouble) {
  auto d = build_double(StructureConstants(4), StructureConstants(4));
  EXPECT_TRUE(d.sc.is_zero());
  EXPECT_TRUE(pairing_invariant(d));
}

TEST(Double, A47PairJacobi) {
  auto d = build_double(A47(), A47i());
  EXPECT_TRUE(jacobi_check(d.sc).pass);
  EXPECT_TRUE(pairing_invariant(d));
  for (size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(d.pairing(i, 4 + i), 1);
    for (size_t j = 0; j < 4; ++j) {
      EXPECT_EQ(sgn(d.pairing(i, j)), 0);
      EXPECT_EQ(sgn(d.pairing(4 + i, 4 + j)), 0);
      for (size_t k = 0; k < 4; ++k) {
        EXPECT_EQ(d.sc(i, j, k), A47()(i, j, k));
        EXPECT_EQ(d.sc(4 + i, 4 + j, 4 + k), A47i()(i, j, k));
      }
    }
  }
}

TEST(Double, A41BadDualDoubleFails) {
  EXPECT_FALSE(jacobi_check(build_double(A41(), alg({{3, 4, 1, 1}})).sc).pass);
}

TEST(Double, JacobiIffComponentsPassOnRandomPairs) {
  std::mt19937 rng(5);
  int agree = 0;
  for (int t = 0; t < 100; ++t) {
    auto f = t % 2 ? A47() : random_sc(rng, 4, 0.15);
    auto fd = t % 2 ? A47i() : random_sc(rng, 4, 0.15);
    // perturb one constant so both outcomes occur
    if (t % 4 == 1) fd.set_bracket(0, 3, 2, fd(0, 3, 2) + 1);
    bool parts = jacobi_check(f).pass && jacobi_check(fd).pass && mixed_jacobi_check(f, fd).pass;
    auto d = build_double(f, fd);
    EXPECT_EQ(jacobi_check(d.sc).pass, parts);
    EXPECT_TRUE(pairing_invariant(d));
    agree += parts;
  }
  EXPECT_GT(agree, 0);
}

TEST(Cocommutator, ZeroAndRoundTrip) {
  EXPECT_TRUE(cocommutator(StructureConstants(4)).is_zero());
  std::mt19937 rng(3);
  for (int t = 0; t < 10; ++t) {
    auto fd = random_sc(rng, 4, 0.4);
    EXPECT_EQ(dual_from_cocommutator(cocommutator(fd)), fd);
  }
}

TEST(Cocommutator, A47DualComponent) {
  auto d = cocommutator(A47i());
  EXPECT_EQ(d(3, 0, 3), 1);
  EXPECT_EQ(d(3, 3, 0), -1);
}

TEST(CE, AbelianClosed) {
  EXPECT_TRUE(ce_differential(wedge_form(4, 0, 1) + wedge_form(4, 2, 3), StructureConstants(4)).is_zero());
}

TEST(CE, A41Examples) {
  EXPECT_TRUE(ce_differential(wedge_form(4, 0, 3) + wedge_form(4, 1, 2), A41()).is_zero());
  auto dw = ce_differential(wedge_form(4, 0, 1), A41());
  EXPECT_EQ(dw(0, 2, 3), 1);
}

TEST(CE, MatchesBruteForceAndIsAntisymmetric) {
  std::mt19937 rng(9);
  for (int t = 0; t < 20; ++t) {
    auto f = random_sc(rng, 4, 0.3);
    RatMatrix w(4, 4);
    for (size_t a = 0; a < 4; ++a)
      for (size_t b = a + 1; b < 4; ++b) w = w + wedge_form(4, a, b, rnd_small(rng));
    auto dw = ce_differential(w, f);
    auto om = [&](const std::vector<Rational>& u, const std::vector<Rational>& v) {
      Rational s;
      for (size_t a = 0; a < 4; ++a)
        for (size_t b = 0; b < 4; ++b) s += u[a] * w(a, b) * v[b];
      return s;
    };
    for (size_t i = 0; i < 4; ++i)
      for (size_t j = 0; j < 4; ++j)
        for (size_t k = 0; k < 4; ++k) {
          auto ei = unit(4, i), ej = unit(4, j), ek = unit(4, k);
          Rational expect = -om(br(f, ei, ej), ek) + om(br(f, ei, ek), ej) - om(br(f, ej, ek), ei);
          EXPECT_EQ(dw(i, j, k), expect);
        }
    EXPECT_TRUE(dw.is_totally_antisymmetric());
  }
}

TEST(CE, RejectsNonAntisymmetric) {
  RatMatrix w(4, 4);
  w(0, 1) = 1;
  EXPECT_THROW(ce_differential(w, A41()), InputError);
}

TEST(Symplectic, A41Witness) {
  auto s = find_symplectic(A41());
  ASSERT_TRUE(s.found);
  EXPECT_TRUE(ce_differential(s.witness, A41()).is_zero());
  EXPECT_NE(sgn(det(s.witness)), 0);
  RatMatrix w = wedge_form(4, 0, 3) + wedge_form(4, 1, 2);
  EXPECT_EQ(det(w), 1);
}

TEST(Symplectic, AbelianWitness) {
  auto s = find_symplectic(StructureConstants(4));
  EXPECT_EQ(s.closed_basis.size(), 6u);
  ASSERT_TRUE(s.found);
  EXPECT_EQ(s.max_rank, 4u);
}

TEST(Symplectic, ClosedBasisIsExactKernel) {
  // so(3) + R has no symplectic form; all closed forms are degenerate
  auto f = alg({{1, 2, 3, 1}, {2, 3, 1, 1}, {3, 1, 2, 1}});
  auto s = find_symplectic(f);
  EXPECT_FALSE(s.found);
  EXPECT_LT(s.max_rank, 4u);
  for (auto& w : s.closed_basis) EXPECT_TRUE(ce_differential(w, f).is_zero());
}
