#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "gen.hpp"
#include "laxbases/errors.hpp"
#include "laxbases/sp_group.hpp"
#include "laxbases_cli/checks.hpp"
#include "laxbases_oracles/oracles.hpp"

namespace laxbases::sp {
namespace {

bases::BasesSpec spec(int g, std::int64_t L, int max_dim = 2) {
  bases::BasesSpec s;
  s.g = g;
  s.L = L;
  s.max_dim = max_dim;
  return s;
}

TEST(Elements, IdentityAndRejection) {
  const auto id = SpElement::identity(2, Modulus(4));
  EXPECT_TRUE(is_symplectic(id.matrix(), Modulus(4)));
  auto twice = linalg::IntMatrix::identity(4);
  for (std::size_t i = 0; i < 4; ++i) twice(i, i) = 2;
  EXPECT_FALSE(is_symplectic(twice, Modulus(4)));
  std::vector<std::int64_t> entries(16, 0);
  for (std::size_t i = 0; i < 4; ++i) entries[i * 5] = 2;
  EXPECT_THROW(SpElement::from_entries(2, Modulus(4), entries), Error);
  EXPECT_THROW(is_symplectic(linalg::IntMatrix::identity(3), Modulus(4)), Error);
}

TEST(Transvection, ZeroIsIdentityAndFormulaHolds) {
  EXPECT_EQ(transvection(ZLVector::zero(2, Modulus(5))), SpElement::identity(2, Modulus(5)));
  testing::Gen gen(61);
  for (int i = 0; i < 300; ++i) {
    const auto L = gen.integer(2, 9);
    const auto v = gen.vector(2, L), x = gen.vector(2, L);
    const auto t = transvection(v);
    const auto want = x + v.scaled(oracle::pairing(cli::to_vec(x), cli::to_vec(v), L));
    EXPECT_EQ(t.apply(x), want);
    EXPECT_EQ(t * t.inverse(), SpElement::identity(2, Modulus(L)));
  }
}

TEST(Group, OrdersAgreeWithBruteForceAndFormula) {
  for (auto [g, L, order] : std::vector<std::tuple<int, std::int64_t, std::size_t>>{{1, 2, 6}, {1, 3, 24}, {2, 2, 720}}) {
    const auto group = enumerate_group(g, Modulus(L));
    EXPECT_EQ(group.size(), order);
    EXPECT_EQ(estimated_group_order(g, Modulus(L)), order);
    EXPECT_EQ(oracle::brute_symplectic_order(g, L), order);
    EXPECT_EQ(group.front(), SpElement::identity(g, Modulus(L)));
    std::set<SpElement> distinct(group.begin(), group.end());
    EXPECT_EQ(distinct.size(), group.size());
  }
  EXPECT_EQ(estimated_group_order(1, Modulus(4)), 48);
  EXPECT_EQ(enumerate_group(1, Modulus(4)).size(), 48u);
  EXPECT_EQ(estimated_group_order(1, Modulus(6)), 144);
}

TEST(Group, ClosedUnderProductsAndInverses) {
  const auto group = enumerate_group(1, Modulus(6));
  const std::set<SpElement> all(group.begin(), group.end());
  testing::Gen gen(62);
  for (int i = 0; i < 500; ++i) {
    const auto& x = group[static_cast<std::size_t>(gen.integer(0, static_cast<long>(group.size()) - 1))];
    const auto& y = group[static_cast<std::size_t>(gen.integer(0, static_cast<long>(group.size()) - 1))];
    EXPECT_TRUE(all.count(x * y));
    EXPECT_TRUE(all.count(x.inverse()));
    EXPECT_TRUE(is_symplectic(x.matrix(), Modulus(6)));
  }
}

TEST(Group, SizeGuard) {
  try {
    enumerate_group(3, Modulus(5), 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::too_large);
  }
}

TEST(Orbit, TransitiveOnVertices) {
  for (auto [g, L] : std::vector<std::pair<int, std::int64_t>>{{1, 2}, {1, 3}, {2, 2}, {2, 3}, {1, 6}}) {
    const auto gens = all_transvections(g, Modulus(L));
    const auto a1 = linalg::canonical_lax(ZLVector::basis_a(g, Modulus(L), 1));
    const auto cert = orbit(a1, gens);
    const auto vertices = bases::enumerate_lax_vertices(spec(g, L));
    std::vector<LaxVector> reached = cert.reached;
    std::sort(reached.begin(), reached.end());
    EXPECT_EQ(reached, vertices) << "g=" << g << " L=" << L;
    EXPECT_TRUE(verify_certificate(cert, gens));
  }
}

TEST(Orbit, EmptyGeneratorsFixThePoint) {
  const auto x = linalg::canonical_lax(ZLVector::basis_b(2, Modulus(3), 2));
  const auto cert = orbit(x, std::span<const SpElement>{});
  EXPECT_EQ(cert.reached, std::vector<LaxVector>{x});
}

TEST(Orbit, CorruptedCertificateIsRejected) {
  const auto gens = all_transvections(1, Modulus(3));
  auto cert = orbit(linalg::canonical_lax(ZLVector::basis_a(1, Modulus(3), 1)), gens);
  ASSERT_GT(cert.reached.size(), 2u);
  std::swap(cert.reached[1], cert.reached[2]);
  EXPECT_FALSE(verify_certificate(cert, gens));
}

TEST(Orbit, SimplicesOfGenusTwo) {
  const auto gens = all_transvections(2, Modulus(2));
  const auto edge = make_lax_simplex({linalg::canonical_lax(ZLVector::basis_a(2, Modulus(2), 1)),
                                      linalg::canonical_lax(ZLVector::basis_a(2, Modulus(2), 2))});
  const auto cert = orbit(edge, gens);
  EXPECT_TRUE(verify_certificate(cert, gens));
  EXPECT_EQ(cert.reached.size(), bases::build_bases(spec(2, 2, 1)).complex.count(1));
}

TEST(Reduction, CommutesWithProductsAndTransvections) {
  testing::Gen gen(63);
  const Modulus from(12), to(4);
  for (int i = 0; i < 200; ++i) {
    const auto v = gen.vector(2, 12), w = gen.vector(2, 12), x = gen.vector(2, 12);
    const auto tv = transvection(v), tw = transvection(w);
    EXPECT_EQ(reduction_map(tv, to), transvection(reduce_vector(v, to)));
    EXPECT_EQ(reduction_map(tv * tw, to), reduction_map(tv, to) * reduction_map(tw, to));
    EXPECT_EQ(reduce_vector(tv.apply(x), to), reduction_map(tv, to).apply(reduce_vector(x, to)));
  }
  EXPECT_EQ(reduction_map(SpElement::identity(2, from), to), SpElement::identity(2, to));
  EXPECT_THROW(reduction_map(SpElement::identity(2, from), Modulus(5)), Error);
}

TEST(Rotations, FullGroupRotatesAnEdgeOfGenusTwoLevelTwo) {
  const auto x = bases::build_bases(spec(2, 2, 1));
  const auto group = enumerate_group(2, Modulus(2));
  const auto report = check_without_rotations(x, group);
  EXPECT_FALSE(report.without_rotations);
  ASSERT_TRUE(report.witness_simplex && report.witness_element);
  const auto& s = *report.witness_simplex;
  const auto& m = group[*report.witness_element];
  ASSERT_EQ(s.size(), 2u);
  const auto u = x.vertices[s[0]], w = x.vertices[s[1]];
  EXPECT_EQ(act(m, u), w);
  EXPECT_EQ(act(m, w), u);
}

TEST(Rotations, SwappedEdgeEndpointsAreDetected) {
  const auto x = bases::build_bases(spec(2, 3, 1));
  const auto& edge = x.complex.simplices(1).front();
  topology::Permutation swap(x.vertices.size());
  std::iota(swap.begin(), swap.end(), 0u);
  std::swap(swap[edge[0]], swap[edge[1]]);
  const std::vector<topology::Permutation> elements{swap};
  EXPECT_FALSE(check_without_rotations(x.complex, elements).without_rotations);
}

TEST(Rotations, CongruenceKernelActsFreelyEnough) {
  const auto x = bases::build_bases(spec(2, 4, 2));
  const auto kernel = enumerate_congruence_kernel(2, Modulus(4), 2);
  EXPECT_EQ(kernel.size(), 1024u);
  const auto report = check_without_rotations(x, kernel);
  ASSERT_TRUE(report.without_rotations);
  topology::GroupAction action;
  for (const auto& m : kernel) action.generators.push_back(vertex_permutation(x, m));
  const auto q = topology::quotient_without_rotations(x.complex, action);
  EXPECT_EQ(q.f_vector(), bases::build_bases(spec(2, 2, 2)).complex.f_vector());
}

}  // namespace
}  // namespace laxbases::sp
