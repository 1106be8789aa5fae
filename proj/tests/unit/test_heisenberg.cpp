#include <gtest/gtest.h>

#include "gen.hpp"
#include "laxbases/errors.hpp"
#include "laxbases/heisenberg.hpp"
#include "laxbases/sp_group.hpp"
#include "laxbases_cli/checks.hpp"

namespace laxbases::heisenberg {
namespace {

std::vector<long> random_w(testing::Gen& gen, const KContext& ctx, long bound = 6) {
  std::vector<long> w(ctx.dimension());
  for (auto& c : w) c = gen.integer(-bound, bound);
  return w;
}

TEST(Context, Coordinates) {
  const KContext ctx(2, 1);
  EXPECT_EQ(ctx.dimension(), 3u);
  EXPECT_EQ(ctx.ambient_coordinate(0), 0u);
  EXPECT_EQ(ctx.ambient_coordinate(1), 2u);
  EXPECT_EQ(ctx.ambient_coordinate(2), 3u);
  EXPECT_THROW(KContext(2, 0), Error);
  EXPECT_THROW(KContext(2, 3), Error);
}

TEST(Group, ContractExamples) {
  const KContext ctx(2, 1);
  const auto e = k_identity(ctx);
  EXPECT_EQ(k_multiply(e, e, ctx), e);
  const auto x = k_element(ctx, 5, {1, 2, 3});
  EXPECT_EQ(k_multiply(x, k_inverse(x, ctx), ctx), e);
  const auto a2 = k_element(ctx, 0, {0, 1, 0}), b2 = k_element(ctx, 0, {0, 0, 1});
  EXPECT_EQ(k_commutator(a2, b2, ctx), k_element(ctx, 2, {0, 0, 0}));
}

TEST(Group, AxiomsOnRandomElements) {
  testing::Gen gen(71);
  for (int i = 0; i < 300; ++i) {
    const KContext ctx(static_cast<int>(gen.integer(1, 4)), 1);
    const auto x = k_element(ctx, gen.integer(-9, 9), random_w(gen, ctx));
    const auto y = k_element(ctx, gen.integer(-9, 9), random_w(gen, ctx));
    const auto z = k_element(ctx, gen.integer(-9, 9), random_w(gen, ctx));
    EXPECT_EQ(k_multiply(k_multiply(x, y, ctx), z, ctx), k_multiply(x, k_multiply(y, z, ctx), ctx));
    EXPECT_EQ(k_multiply(x, k_identity(ctx), ctx), x);
    EXPECT_EQ(k_multiply(k_inverse(x, ctx), x, ctx), k_identity(ctx));
  }
}

TEST(Group, CommutatorsAreCentralAndMatchTheForm) {
  testing::Gen gen(72);
  for (int i = 0; i < 500; ++i) {
    const int g = static_cast<int>(gen.integer(1, 4));
    const KContext ctx(g, static_cast<int>(gen.integer(1, g)));
    const auto w1 = random_w(gen, ctx), w2 = random_w(gen, ctx);
    const auto bad = cli::commutator_mismatch(ctx, w1, w2);
    ASSERT_FALSE(bad) << bad->dump();
  }
}

TEST(Abelianization, ContractExamples) {
  const KContext ctx(2, 1);
  for (const auto& c : abelianization_image(k_element(ctx, 7, {0, 0, 0}), ctx)) EXPECT_EQ(c, 0);
  EXPECT_THROW(abelianization_image(k_identity(KContext(2, 2)), KContext(2, 2)), Error);
}

TEST(Coinvariants, NoGeneratorsLeaveEverything) {
  for (auto [g, k] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {4, 2}}) {
    const KContext ctx(g, k);
    EXPECT_EQ(coinvariant_dimension(ctx, {}), static_cast<std::size_t>(2 * g - k));
  }
}

TEST(Coinvariants, VanishForGenusFourLevelTwo) {
  const auto report = compute_coinvariants(KContext(4, 1), 2);
  EXPECT_EQ(report.dimension, 0u);
  EXPECT_TRUE(report.proved_zero);
  EXPECT_EQ(report.ambient_dimension, 7u);
}

TEST(Coinvariants, VanishAcrossSmallCases) {
  for (auto [g, k, L] : std::vector<std::tuple<int, int, long>>{{2, 1, 2}, {3, 1, 3}, {3, 2, 2}, {4, 3, 5}}) {
    EXPECT_EQ(compute_coinvariants(KContext(g, k), L).dimension, 0u) << g << " " << k << " " << L;
  }
}

TEST(Generators, AreValidatedAndSymplectic) {
  const KContext ctx(3, 1);
  for (const auto& a : default_generators(ctx, 3)) {
    EXPECT_NO_THROW(validate_generator(ctx, a));
    EXPECT_TRUE(sp::is_symplectic(a, linalg::Modulus(0)));
  }
  for (const auto& a : enlarged_generators(ctx, 2)) EXPECT_NO_THROW(validate_generator(ctx, a));
}

TEST(Generators, RejectsBadMatrices) {
  const KContext ctx(2, 1);
  auto expect_invalid = [&](const linalg::IntMatrix& a) {
    try {
      validate_generator(ctx, a);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::invalid_generator);
    }
  };
  auto doubled = linalg::IntMatrix::identity(4);
  doubled(0, 0) = 2;
  expect_invalid(doubled);
  // a_1 -> b_1, b_1 -> -a_1 is symplectic but moves a_1.
  auto turn = linalg::IntMatrix::identity(4);
  turn(0, 0) = 0;
  turn(1, 1) = 0;
  turn(1, 0) = 1;
  turn(0, 1) = -1;
  ASSERT_TRUE(sp::is_symplectic(turn, linalg::Modulus(0)));
  expect_invalid(turn);
  EXPECT_NO_THROW(validate_generator(ctx, linalg::IntMatrix::identity(4)));
}

TEST(Embedding, IsASymplecticHomomorphism) {
  testing::Gen gen(73);
  for (int i = 0; i < 200; ++i) {
    const KContext ctx(3, 1);
    auto w1 = random_w(gen, ctx), w2 = random_w(gen, ctx);
    w1[0] = 0;
    w2[0] = 0;
    const auto x = k_element(ctx, gen.integer(-5, 5), w1), y = k_element(ctx, gen.integer(-5, 5), w2);
    const auto px = embedding_matrix(ctx, x), py = embedding_matrix(ctx, y);
    EXPECT_TRUE(sp::is_symplectic(px, linalg::Modulus(0)));
    EXPECT_EQ(px * py, embedding_matrix(ctx, k_multiply(x, y, ctx)));
  }
  EXPECT_EQ(embedding_matrix(KContext(2, 1), k_identity(KContext(2, 1))), linalg::IntMatrix::identity(4));
}

}  // namespace
}  // namespace laxbases::heisenberg
