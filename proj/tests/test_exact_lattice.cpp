#include <gtest/gtest.h>

#include <random>

#include "toricdef/exact_lattice.hpp"

using namespace toricdef;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long range) {
  std::uniform_int_distribution<long> dist(-range, range);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

void expect_smith_valid(const IntMatrix& a) {
  SmithForm s = smith_normal_form(a);
  EXPECT_EQ(s.U * a * s.V, s.D);
  Integer du = determinant(s.U), dv = determinant(s.V);
  EXPECT_TRUE(du == 1 || du == -1);
  EXPECT_TRUE(dv == 1 || dv == -1);
  const std::size_t r = s.rank();
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j) {
        EXPECT_EQ(s.D(i, j), 0);
      }
  for (std::size_t i = 0; i < r; ++i) EXPECT_GT(s.D(i, i), 0);
  for (std::size_t i = 0; i + 1 < r; ++i) EXPECT_TRUE(mpz_divisible_p(s.D(i + 1, i + 1).get_mpz_t(), s.D(i, i).get_mpz_t()));
}

}  // namespace

TEST(Primitive, DividesByContent) {
  EXPECT_EQ(primitive(LatticeVector{2, 4, 6}), (LatticeVector{1, 2, 3}));
  EXPECT_EQ(primitive(LatticeVector{-1, 1, 0, -2}), (LatticeVector{-1, 1, 0, -2}));
  EXPECT_EQ(primitive(LatticeVector{-3, 3, 0, -6}), (LatticeVector{-1, 1, 0, -2}));
}

TEST(Primitive, ZeroVectorRaises) {
  try {
    primitive(LatticeVector{0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroVector);
  }
}

TEST(Primitive, InvariantUnderPositiveScaling) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> c(-9, 9), lam(1, 12);
  for (int iter = 0; iter < 300; ++iter) {
    LatticeVector v{c(rng), c(rng), c(rng)};
    if (v.is_zero()) continue;
    Integer l = lam(rng);
    LatticeVector p = primitive(v);
    EXPECT_EQ(primitive(l * v), p);
    EXPECT_EQ(content(p), 1);
    // positive multiple: some positive factor maps p to v
    Integer g = content(v);
    EXPECT_EQ(g * p, v);
  }
}

TEST(RationalVector, PrimitiveClearsDenominators) {
  RationalVector v(std::vector<Rational>{Rational(1, 2), Rational(-1, 3)});
  EXPECT_EQ(primitive(v), (LatticeVector{3, -2}));
  EXPECT_EQ(denominator(v), 6);
}

TEST(Smith, Examples) {
  EXPECT_EQ(smith_normal_form(IntMatrix{{1, 0}, {0, 1}}).D, (IntMatrix{{1, 0}, {0, 1}}));
  EXPECT_EQ(smith_normal_form(IntMatrix{{4, 6}}).D, (IntMatrix{{2, 0}}));
  EXPECT_EQ(smith_normal_form(IntMatrix{{2, 0}, {0, 3}}).D, (IntMatrix{{1, 0}, {0, 6}}));
  SmithForm e = smith_normal_form(IntMatrix(0, 0));
  EXPECT_EQ(e.D.rows(), 0u);
}

// Independent check of the 2x2 diagonal: d1 = gcd of entries, d1*d2 = |det|.
TEST(Smith, TwoByTwoAgainstGcdDeterminantOracle) {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 300; ++iter) {
    IntMatrix a = random_matrix(rng, 2, 2, 20);
    SmithForm s = smith_normal_form(a);
    Integer g = 0;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) g = gcd_of(g, a(i, j));
    Integer det = abs(determinant(a));
    EXPECT_EQ(s.D(0, 0), g);
    if (g != 0) {
      EXPECT_EQ(s.D(0, 0) * s.D(1, 1), det);
    }
  }
}

TEST(Smith, TransformsAreUnimodularOnRandomShapes) {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 200; ++iter) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    expect_smith_valid(random_matrix(rng, r, c, 6));
  }
  expect_smith_valid(IntMatrix(3, 2));
}

TEST(Cokernel, ProjectivePlane) {
  Cokernel c = cokernel(IntMatrix{{1, 0}, {0, 1}, {-1, -1}});
  EXPECT_EQ(c.group.free_rank, 1u);
  EXPECT_TRUE(c.group.torsion.empty());
  EXPECT_EQ(c.map_kernel_rank, 0u);
  for (const auto& d : c.degrees) EXPECT_EQ(d.free, std::vector<Integer>{1});
}

TEST(Cokernel, WeightedProjectiveSpaceWeights) {
  Cokernel c = cokernel(IntMatrix{{0, 1, 0}, {-1, -1, -1}, {0, 0, 1}, {2, 1, 1}});
  ASSERT_EQ(c.group.free_rank, 1u);
  EXPECT_TRUE(c.group.torsion.empty());
  std::vector<Integer> w;
  for (const auto& d : c.degrees) w.push_back(d.free[0]);
  EXPECT_EQ(w, (std::vector<Integer>{1, 2, 1, 1}));
}

TEST(Cokernel, NonInjectiveRayMapIsFlagged) {
  Cokernel c = cokernel(IntMatrix{{1, 0}, {-1, 0}});
  EXPECT_EQ(c.group.free_rank, 1u);
  EXPECT_TRUE(c.group.torsion.empty());
  EXPECT_EQ(c.map_kernel_rank, 1u);
}

TEST(Cokernel, TorsionOfWeightedPlaneQuotient) {
  // P^2 / (Z/3) acting with weights (0,1,2): class group Z + Z/3.
  Cokernel c = cokernel(IntMatrix{{-1, -1}, {2, -1}, {-1, 2}});
  EXPECT_EQ(c.group.free_rank, 1u);
  EXPECT_EQ(c.group.torsion, std::vector<Integer>{3});
}

TEST(Cokernel, UnimodularTransposeHasTrivialCokernel) {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 100; ++iter) {
    // product of random elementary matrices
    const std::size_t n = 1 + rng() % 4;
    IntMatrix u = IntMatrix::identity(n);
    for (int s = 0; s < 8 && n > 1; ++s) {
      std::size_t i = rng() % n, j = rng() % n;
      if (i == j) continue;
      u.add_row(i, j, Integer(static_cast<long>(rng() % 7) - 3));
    }
    Cokernel c = cokernel(u.transpose());
    EXPECT_EQ(c.group.free_rank, 0u);
    EXPECT_TRUE(c.group.torsion.empty());
  }
}

TEST(Cokernel, DegreesKillImageColumns) {
  std::mt19937_64 rng(13);
  for (int iter = 0; iter < 100; ++iter) {
    IntMatrix a = random_matrix(rng, 4, 2, 4);
    Cokernel c = cokernel(a);
    for (std::size_t j = 0; j < a.cols(); ++j) {
      std::vector<Integer> col;
      for (std::size_t i = 0; i < a.rows(); ++i) col.push_back(a(i, j));
      EXPECT_EQ(c.degree_of(col), c.zero());
    }
  }
}

TEST(Linear, RankAndDeterminant) {
  EXPECT_EQ(rank_of(IntMatrix{{1, 2}, {2, 4}}), 1u);
  EXPECT_EQ(determinant(IntMatrix{{0, 0, 1, 0}, {-1, 1, 0, -2}, {0, 0, 0, 1}, {1, 0, 0, 1}}), 1);
  EXPECT_EQ(determinant(IntMatrix{{2, 1}, {1, 1}}), 1);
}
