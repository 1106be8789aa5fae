#include <gtest/gtest.h>

#include "gen.hpp"
#include "laxbases/errors.hpp"
#include "laxbases/zl_linalg.hpp"
#include "laxbases_cli/checks.hpp"
#include "laxbases_oracles/oracles.hpp"

namespace laxbases::linalg {
namespace {

using testing::Gen;

ZLVector vec(int g, std::int64_t L, std::vector<std::int64_t> c) { return ZLVector(g, Modulus(L), std::move(c)); }

TEST(Modulus, RejectsZeroRingAndNegatives) {
  EXPECT_THROW(Modulus(1), Error);
  EXPECT_THROW(Modulus(-3), Error);
  EXPECT_TRUE(Modulus(0).is_integers());
  EXPECT_EQ(Modulus(5).reduce(-7), 3);
  EXPECT_EQ(Modulus(0).reduce(-7), -7);
}

TEST(IntersectionForm, SymplecticBasisPairsToOne) {
  for (std::int64_t L : {2, 3, 7, 12}) {
    EXPECT_EQ(intersection_form(ZLVector::basis_a(1, Modulus(L), 1), ZLVector::basis_b(1, Modulus(L), 1)), 1);
  }
}

TEST(IntersectionForm, HandExpandedExample) {
  EXPECT_EQ(intersection_form(vec(1, 3, {1, 1}), vec(1, 3, {0, 1})), 1);
}

TEST(IntersectionForm, ShapeMismatchIsRejected) {
  EXPECT_THROW(intersection_form(vec(1, 3, {1, 0}), vec(2, 3, {1, 0, 0, 0})), Error);
  EXPECT_THROW(intersection_form(vec(1, 3, {1, 0}), vec(1, 5, {1, 0})), Error);
}

TEST(IntersectionForm, AlternatingBilinearAndBlockDiagonal) {
  Gen gen(11);
  for (int i = 0; i < 500; ++i) {
    const int g = static_cast<int>(gen.integer(1, 3));
    const auto L = gen.integer(2, 12);
    const auto x = gen.vector(g, L), y = gen.vector(g, L), z = gen.vector(g, L);
    const Modulus m(L);
    EXPECT_EQ(intersection_form(x, x), 0);
    EXPECT_EQ(intersection_form(x, y), m.reduce(-intersection_form(y, x)));
    EXPECT_EQ(intersection_form(x + y, z), m.reduce(intersection_form(x, z) + intersection_form(y, z)));
    EXPECT_EQ(intersection_form(x, y), oracle::pairing(cli::to_vec(x), cli::to_vec(y), L));
  }
}

TEST(IsPrimitive, ContractExamples) {
  EXPECT_TRUE(is_primitive(vec(2, 9, {1, 0, 0, 0})));
  EXPECT_FALSE(is_primitive(vec(2, 4, {2, 0, 0, 0})));
  EXPECT_TRUE(is_primitive(vec(2, 4, {2, 3, 0, 0})));
  EXPECT_FALSE(is_primitive(vec(2, 4, {0, 0, 0, 0})));
}

TEST(IsPrimitive, AgreesWithBruteForceOnSmallModules) {
  for (auto [g, L] : std::vector<std::pair<int, std::int64_t>>{{1, 2}, {1, 4}, {1, 6}, {2, 2}, {2, 3}, {2, 4}}) {
    oracle::for_each_vector(2 * static_cast<std::size_t>(g), L, [&](const oracle::Vec& v) {
      const auto bad = cli::primitive_mismatch(ZLVector(g, Modulus(L), v));
      EXPECT_FALSE(bad) << bad->dump();
      return !bad;
    });
  }
}

TEST(IsPrimitive, InvariantUnderUnitScaling) {
  Gen gen(12);
  for (int i = 0; i < 300; ++i) {
    const auto L = gen.integer(2, 30);
    const auto v = gen.vector(2, L);
    std::int64_t u;
    do u = gen.integer(1, L - 1); while (!Modulus(L).is_unit(u));
    EXPECT_EQ(is_primitive(v), is_primitive(v.scaled(u)));
  }
}

TEST(IsFreeSummand, ContractExamples) {
  for (std::int64_t L : {2, 3, 4, 9}) {
    const ZLVector a1[] = {ZLVector::basis_a(2, Modulus(L), 1)};
    EXPECT_TRUE(is_free_summand(a1));
    const ZLVector pair[] = {ZLVector::basis_a(2, Modulus(L), 1), ZLVector::basis_a(2, Modulus(L), 2)};
    EXPECT_TRUE(is_free_summand(pair));
  }
  const ZLVector twice[] = {vec(2, 4, {2, 0, 0, 0})};
  EXPECT_FALSE(is_free_summand(twice));
  const ZLVector over_z[] = {vec(2, 0, {1, 0, 0, 0}), vec(2, 0, {0, 2, 0, 0})};
  EXPECT_FALSE(is_free_summand(over_z));
}

TEST(IsFreeSummand, AgreesWithRetractionSearch) {
  Gen gen(13);
  for (auto [g, L] : std::vector<std::pair<int, std::int64_t>>{{1, 4}, {1, 6}, {2, 2}, {2, 3}, {2, 4}}) {
    for (int i = 0; i < 300; ++i) {
      std::vector<ZLVector> vs;
      const auto k = gen.integer(1, std::min<std::int64_t>(2 * g, 3));
      for (int j = 0; j < k; ++j) vs.push_back(gen.vector(g, L));
      const auto bad = cli::summand_mismatch(vs);
      ASSERT_FALSE(bad) << bad->dump();
    }
  }
}

TEST(IsFreeSummand, SingletonMeansPrimitive) {
  Gen gen(14);
  for (int i = 0; i < 500; ++i) {
    const auto v = gen.vector(2, gen.integer(2, 20));
    const ZLVector one[] = {v};
    EXPECT_EQ(is_free_summand(one), is_primitive(v));
  }
}

TEST(CanonicalLax, ContractExamples) {
  EXPECT_EQ(canonical_lax(vec(1, 3, {0, 1})).rep(), vec(1, 3, {0, 1}));
  EXPECT_EQ(canonical_lax(vec(1, 3, {0, 2})).rep(), vec(1, 3, {0, 1}));
  EXPECT_EQ(canonical_lax(vec(1, 2, {1, 1})).rep(), vec(1, 2, {1, 1}));
  EXPECT_THROW(canonical_lax(vec(1, 4, {2, 0})), Error);
}

TEST(CanonicalLax, IdentifiesExactlyPlusMinus) {
  Gen gen(15);
  for (int i = 0; i < 300; ++i) {
    const auto L = gen.integer(2, 15);
    const auto v = gen.primitive(2, L);
    EXPECT_EQ(canonical_lax(v), canonical_lax(-v));
    EXPECT_LE(canonical_lax(v).rep(), v);
    EXPECT_LE(canonical_lax(v).rep(), -v);
  }
}

TEST(Determinant, MatchesLeibniz) {
  Gen gen(16);
  for (int i = 0; i < 200; ++i) {
    const auto n = static_cast<std::size_t>(gen.integer(1, 5));
    const auto a = gen.matrix(n, n, -9, 9);
    std::vector<std::vector<mpz_class>> rows(n, std::vector<mpz_class>(n));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) rows[r][c] = a(r, c);
    }
    EXPECT_EQ(determinant(a), oracle::leibniz_det(rows));
  }
}

TEST(SymplecticForm, PreservedByIdentityNotByDoubling) {
  EXPECT_TRUE(preserves_symplectic_form(IntMatrix::identity(4), Modulus(4)));
  auto d = IntMatrix::identity(4);
  for (std::size_t i = 0; i < 4; ++i) d(i, i) = 2;
  EXPECT_FALSE(preserves_symplectic_form(d, Modulus(4)));
}

}  // namespace
}  // namespace laxbases::linalg
