#include <gtest/gtest.h>

#include "support/corpus.hpp"
#include "support/oracles.hpp"
#include "toricdef/catalog.hpp"

using namespace toricdef;
using LV = LatticeVector;
using Exps = std::vector<Integer>;

namespace {

const std::vector<DeformationDatum>& corpus() {
  static const std::vector<DeformationDatum> data = testgen::random_valid_data(77, 60);
  return data;
}

Exps exps_of(const CoxSystem& s, std::initializer_list<std::pair<const char*, long>> powers) {
  Exps e(s.size());
  for (const auto& [name, p] : powers) {
    auto it = std::find(s.names.begin(), s.names.end(), name);
    EXPECT_NE(it, s.names.end()) << name;
    e[static_cast<std::size_t>(it - s.names.begin())] = p;
  }
  return e;
}

// Independent homogeneity test: two monomials have the same class iff their
// exponent difference is the pairing vector of some lattice point m.
bool same_class_oracle(const std::vector<LatticeVector>& rays, std::size_t rank, const Exps& a, const Exps& b) {
  std::vector<RationalVector> cols(rank, RationalVector(rays.size()));
  for (std::size_t j = 0; j < rays.size(); ++j)
    for (std::size_t c = 0; c < rank; ++c) cols[c][j] = rays[j][c];
  RationalVector rhs(rays.size());
  for (std::size_t j = 0; j < rays.size(); ++j) rhs[j] = a[j] - b[j];
  auto sol = oracle::solve_columns(cols, rhs);
  if (!sol) return false;
  for (const auto& x : *sol)
    if (x.get_den() != 1) return false;
  return true;
}

bool homogeneous_oracle(const CoxSystem& s, std::size_t rank, const CoxPolynomial& f) {
  for (const auto& t : f.terms)
    if (!same_class_oracle(s.rays, rank, f.terms.front().exps, t.exps)) return false;
  return true;
}

}  // namespace

TEST(Binomials, CA1) {
  TildeData t = build_tilde(catalog::cA1(3));
  CoxSystem s = cox_system(t, catalog::cA1_aliases());
  auto b = binomials(t);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(format_polynomial(s, b[0]), "x*y - u^2");
  EXPECT_EQ(b[0].terms[0].exps, exps_of(s, {{"x", 1}, {"y", 1}}));
  EXPECT_EQ(b[0].terms[1].exps, exps_of(s, {{"u", 2}}));
  EXPECT_TRUE(is_homogeneous(s, b[0]));
}

TEST(Binomials, ToyPlane) {
  TildeData t = build_tilde(catalog::toy_plane());
  CoxSystem s = cox_system(t);
  auto b = binomials(t);
  ASSERT_EQ(b.size(), 1u);
  Exps y(3), z(3);
  y[*s.index_of(LV{0, 0, 1})] = 1;
  z[*s.index_of(LV{0, 1, -1})] = 1;
  EXPECT_EQ(b[0].terms[0].exps, y);
  EXPECT_EQ(b[0].terms[1].exps, z);
  // the ray (1,0,0) pairs to zero and appears nowhere
  EXPECT_EQ(b[0].support().count(*s.index_of(LV{1, 0, 0})), 0u);
}

TEST(Trinomials, CA1GoldenString) {
  for (long p : {1, 2, 3, 7}) {
    TildeData t = build_tilde(catalog::cA1(p));
    CoxSystem s = cox_system(t, catalog::cA1_aliases());
    auto f = trinomials(t);
    ASSERT_EQ(f.size(), 1u);
    std::string zp = p == 1 ? "z" : "z^" + std::to_string(p);
    EXPECT_EQ(format_polynomial(s, f[0]), "x*y - u^2 - t1*" + zp);
  }
}

TEST(Trinomials, ToyPlaneThirdMonomialIsConstant) {
  TildeData t = build_tilde(catalog::toy_plane());
  auto f = trinomials(t);
  ASSERT_EQ(f.size(), 1u);
  ASSERT_EQ(f[0].terms.size(), 3u);
  EXPECT_EQ(f[0].terms[2].exps, Exps(3));
  EXPECT_EQ(f[0].terms[2].coeff, (Coefficient{-1, "t1"}));
}

TEST(Trinomials, SpecializationAtZeroGivesBinomials) {
  TildeData t = build_tilde(catalog::cA1(3));
  EXPECT_EQ(specialize(trinomials(t)[0], {{"t1", 0}}), binomials(t)[0]);
}

TEST(Trinomials, NegativeExponentIsReported) {
  std::vector<LatticeVector> rays{LV{1, 0}, LV{0, 1}};
  std::vector<std::vector<Integer>> pairings{{Integer(1)}, {Integer(0)}};
  try {
    trinomials_from_pairings(rays, pairings, {Integer(0), Integer(-1)}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeExponent);
    EXPECT_NE(std::string(e.what()).find("(0,1)"), std::string::npos);
  }
}

TEST(BoundaryMonomialTest, Examples) {
  TildeData t = build_tilde(catalog::cA1(3));
  CoxSystem s = cox_system(t, catalog::cA1_aliases());
  BoundaryMonomial m = boundary_monomial(t);
  EXPECT_FALSE(m.degenerate);
  EXPECT_EQ(format_polynomial(s, m.monomial), "z*u");

  TildeData toy = build_tilde(catalog::toy_plane());
  CoxSystem ts = cox_system(toy);
  Exps e(3);
  e[*ts.index_of(LV{1, 0, 0})] = 1;
  e[*ts.index_of(LV{0, 1, -1})] = 1;
  EXPECT_EQ(boundary_monomial(toy).monomial.terms.front().exps, e);

  BoundaryMonomial none = boundary_monomial_from_pairings({{Integer(1)}, {Integer(2)}});
  EXPECT_TRUE(none.degenerate);
  EXPECT_EQ(none.monomial.terms.front().exps, Exps(2));
}

TEST(FischerShapiro, Examples) {
  EXPECT_TRUE(fischer_shapiro_check(build_tilde(catalog::cA1(3)).pairing_matrix()));
  IntMatrix ex{{0, -2, 1, 1}};
  EXPECT_TRUE(fischer_shapiro_check(ex));
  EXPECT_FALSE(fischer_shapiro_check(IntMatrix{{1, 1}, {1, -1}}));
  EXPECT_FALSE(fischer_shapiro_check(IntMatrix{{1, -1}, {2, -2}}));
}

TEST(FischerShapiro, AgreesWithBruteForceOnRandomMatrices) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 300; ++it) {
    std::size_t k = 1 + rng() % 3, c = 1 + rng() % 4;
    IntMatrix m(k, c);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = testgen::uniform(rng, -2, 2);
    std::vector<RationalVector> rows;
    for (std::size_t i = 0; i < k; ++i) {
      RationalVector r(c);
      for (std::size_t j = 0; j < c; ++j) r[j] = m(i, j);
      rows.push_back(r);
    }
    bool expected = oracle::independent(rows);
    for (std::size_t j = 0; j < c; ++j) {
      int pos = 0;
      for (std::size_t i = 0; i < k; ++i) pos += m(i, j) > 0;
      expected = expected && pos <= 1;
    }
    EXPECT_EQ(fischer_shapiro_check(m), expected);
  }
}

TEST(RegularSequence, CA1) {
  TildeData t = build_tilde(catalog::cA1(3));
  EXPECT_TRUE(disjoint_support_regular_sequence(binomials(t), boundary_monomial(t).monomial));
}

TEST(RegularSequence, MutationTrinomialAgainstMonomial) {
  std::vector<LatticeVector> rays{LV{0, 1, 0}, LV{-1, -1, -1}, LV{0, 0, 1}, LV{2, 1, 1}};
  CoxSystem s = make_cox_system(rays, 3, catalog::p2_family_aliases(), {"a", "b", "c"});
  CoxPolynomial tri{{Term{{1, "a"}, exps_of(s, {{"x", 2}})}, Term{{1, "b"}, exps_of(s, {{"y", 1}})},
                     Term{{1, "c"}, exps_of(s, {{"z0", 1}, {"z1", 1}})}}};
  CoxPolynomial xy = monomial(exps_of(s, {{"x", 1}, {"y", 1}}));
  EXPECT_TRUE(disjoint_support_regular_sequence({tri}, xy));
  CoxPolynomial shared{{Term{{1, "a"}, exps_of(s, {{"x", 2}, {"z0", 1}})}, Term{{1, "b"}, exps_of(s, {{"y", 1}, {"z0", 1}})},
                        Term{{1, "c"}, exps_of(s, {{"z0", 1}, {"z1", 1}})}}};
  EXPECT_FALSE(disjoint_support_regular_sequence({shared}, monomial(exps_of(s, {{"z0", 1}}))));
}

TEST(RegularSequence, SharedSupportFails) {
  CoxPolynomial x_minus_y{{Term{{1, ""}, {1, 0}}, Term{{-1, ""}, {0, 1}}}};
  EXPECT_FALSE(disjoint_support_regular_sequence({x_minus_y}, monomial({1, 1})));
  // overlapping y-parts
  CoxPolynomial a{{Term{{1, ""}, {1, 1, 0, 0}}, Term{{-1, ""}, {0, 0, 0, 1}}}};
  CoxPolynomial b{{Term{{1, ""}, {0, 1, 0, 0}}, Term{{-1, ""}, {0, 0, 0, 1}}}};
  EXPECT_FALSE(disjoint_support_regular_sequence({a, b}, monomial({0, 0, 1, 1})));
  // different z-parts
  CoxPolynomial c{{Term{{1, ""}, {0, 1, 0, 0}}, Term{{-1, ""}, {0, 0, 1, 0}}}};
  EXPECT_FALSE(disjoint_support_regular_sequence({a, c}, monomial({0, 0, 1, 1})));
  // non-reduced monomial
  EXPECT_FALSE(disjoint_support_regular_sequence({a}, monomial({0, 0, 1, 2})));
  EXPECT_TRUE(disjoint_support_regular_sequence({a}, monomial({0, 0, 1, 1})));
}

TEST(Homogeneity, WeightedProjectiveTrinomial) {
  std::vector<LatticeVector> rays{LV{0, 1, 0}, LV{-1, -1, -1}, LV{0, 0, 1}, LV{2, 1, 1}};
  CoxSystem s = make_cox_system(rays, 3, catalog::p2_family_aliases(), {"a", "b", "c"});
  EXPECT_TRUE(s.grading.group.torsion.empty());
  ASSERT_EQ(s.grading.group.free_rank, 1u);
  GroupElement dx = s.degree(exps_of(s, {{"x", 1}}));
  ASSERT_EQ(dx.free.size(), 1u);
  EXPECT_EQ(abs(dx.free[0]), 1);
  EXPECT_EQ(s.degree(exps_of(s, {{"y", 1}})).free[0], 2 * dx.free[0]);
  EXPECT_EQ(s.degree(exps_of(s, {{"z1", 1}})).free[0], dx.free[0]);
  CoxPolynomial tri{{Term{{1, "a"}, exps_of(s, {{"x", 2}})}, Term{{1, "b"}, exps_of(s, {{"y", 1}})},
                     Term{{1, "c"}, exps_of(s, {{"z0", 1}, {"z1", 1}})}}};
  auto deg = homogeneous_degree(s, tri);
  ASSERT_TRUE(deg.has_value());
  EXPECT_EQ(deg->free[0], 2 * dx.free[0]);
}

TEST(Homogeneity, TrivialClassGroupAndFailure) {
  TildeData t = build_tilde(catalog::cA1(3));
  CoxSystem s = cox_system(t, catalog::cA1_aliases());
  auto deg = homogeneous_degree(s, trinomials(t)[0]);
  ASSERT_TRUE(deg.has_value());
  EXPECT_EQ(*deg, s.grading.zero());
  EXPECT_EQ(s.grading.group.free_rank, 0u);

  CoxSystem p2 = make_cox_system({LV{1, 0}, LV{0, 1}, LV{-1, -1}}, 2);
  CoxPolynomial f{{Term{{1, ""}, {2, 0, 0}}, Term{{-1, ""}, {0, 1, 0}}}};
  EXPECT_FALSE(is_homogeneous(p2, f));
}

TEST(Homogeneity, TorsionIsCompared) {
  // P^2 / (Z/3): rays spanning an index-3 sublattice
  CoxSystem s = make_cox_system({LV{1, 0}, LV{1, 3}, LV{-2, -3}}, 2);
  ASSERT_EQ(s.grading.group.torsion.size(), 1u);
  CoxPolynomial f{{Term{{1, ""}, {1, 0, 0}}, Term{{-1, ""}, {0, 1, 0}}}};
  EXPECT_EQ(is_homogeneous(s, f), homogeneous_oracle(s, 2, f));
  EXPECT_FALSE(is_homogeneous(s, f));
  CoxPolynomial g{{Term{{1, ""}, {3, 0, 0}}, Term{{-1, ""}, {0, 3, 0}}}};
  EXPECT_TRUE(is_homogeneous(s, g));
}

TEST(Homogeneity, AgreesWithLatticeOracleOnRandomMonomials) {
  std::mt19937_64 rng(9);
  int same = 0;
  for (int it = 0; it < 300; ++it) {
    std::size_t d = 2;
    auto rays = testgen::random_vectors(rng, d, 3 + rng() % 2, 3);
    if (rank_of(rays, d) != d) continue;
    CoxSystem s = make_cox_system(rays, d);
    Exps a(rays.size()), b(rays.size());
    for (std::size_t j = 0; j < rays.size(); ++j) {
      a[j] = testgen::uniform(rng, 0, 3);
      b[j] = testgen::uniform(rng, 0, 3);
    }
    bool expected = same_class_oracle(rays, d, a, b);
    same += expected;
    EXPECT_EQ(s.degree(a) == s.degree(b), expected);
  }
  EXPECT_GT(same, 0);
}

TEST(Specialize, MergesAndDropsTerms) {
  CoxPolynomial f{{Term{{1, ""}, {1, 0}}, Term{{-1, "t1"}, {1, 0}}, Term{{2, "t2"}, {0, 1}}}};
  CoxPolynomial g = specialize(f, {{"t1", 1}});
  ASSERT_EQ(g.terms.size(), 1u);
  EXPECT_EQ(g.terms[0].coeff, (Coefficient{2, "t2"}));
  EXPECT_EQ(Coefficient(Integer(-3), "b").str(), "-3*b");
  EXPECT_EQ(Coefficient(Integer(1), "t1").str(), "+t1");
  EXPECT_EQ(Coefficient(Integer(-1), "").str(), "-1");
}

TEST(CoxSystemTest, RejectsDegenerateRays) {
  try {
    make_cox_system({LV{1, 0}, LV{-1, 0}}, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotFullDimensional);
  }
}

TEST(Corpus, PairingMatricesPassFischerShapiro) {
  for (const auto& d : corpus()) EXPECT_TRUE(fischer_shapiro_check(build_tilde(d).pairing_matrix()));
}

TEST(Corpus, EquationsAreHomogeneousAndSpecialize) {
  for (const auto& d : corpus()) {
    TildeData t = build_tilde(d);
    CoxSystem s = cox_system(t);
    auto bs = binomials(t);
    auto ts = trinomials(t);
    ASSERT_EQ(bs.size(), t.k);
    ASSERT_EQ(ts.size(), t.k);
    std::map<std::string, Integer> zero;
    for (const auto& p : s.parameters) zero[p] = 0;
    for (std::size_t i = 0; i < t.k; ++i) {
      EXPECT_EQ(specialize(ts[i], zero), bs[i]);
      EXPECT_TRUE(is_homogeneous(s, bs[i]));
      EXPECT_TRUE(is_homogeneous(s, ts[i]));
      EXPECT_TRUE(homogeneous_oracle(s, t.n + t.k, ts[i]));
      for (std::size_t j = 0; j < t.rays.size(); ++j) {
        Integer minus = t.pairings[j][i] < 0 ? Integer(-t.pairings[j][i]) : Integer(0);
        EXPECT_EQ(ts[i].terms[2].exps[j], t.w_pairings[j] + minus);
        EXPECT_GE(ts[i].terms[2].exps[j], 0);
      }
    }
    EXPECT_TRUE(is_homogeneous(s, boundary_monomial(t).monomial));
  }
}
