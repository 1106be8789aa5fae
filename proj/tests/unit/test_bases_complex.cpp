#include <gtest/gtest.h>

#include "gen.hpp"
#include "laxbases/bases_complex.hpp"
#include "laxbases/errors.hpp"
#include "laxbases_cli/checks.hpp"
#include "laxbases_oracles/oracles.hpp"

namespace laxbases::bases {
namespace {

using linalg::Modulus;

LaxVector lax(int g, std::int64_t L, std::vector<std::int64_t> c) {
  return linalg::canonical_lax(ZLVector(g, Modulus(L), std::move(c)));
}

BasesSpec spec(int g, std::int64_t L, int max_dim = 2, int delta_k = 0, bool w = false) {
  BasesSpec s;
  s.g = g;
  s.L = L;
  s.max_dim = max_dim;
  s.delta_k = delta_k;
  s.restrict_W = w;
  return s;
}

TEST(Spec, Validation) {
  EXPECT_THROW(spec(0, 3).validate(), Error);
  EXPECT_THROW(spec(2, 1).validate(), Error);
  EXPECT_THROW(spec(2, 3, 2, 3).validate(), Error);
  EXPECT_THROW(spec(2, 3, -1).validate(), Error);
  EXPECT_NO_THROW(spec(2, 3, 0, 2, true).validate());
}

TEST(Vertices, ContractCounts) {
  EXPECT_EQ(enumerate_lax_vertices(spec(1, 2)).size(), 3u);
  EXPECT_EQ(enumerate_lax_vertices(spec(1, 3)).size(), 4u);
  EXPECT_EQ(enumerate_lax_vertices(spec(3, 3)).size(), 364u);
}

TEST(Vertices, MatchIndependentCounts) {
  for (auto s : {spec(1, 4), spec(1, 6), spec(2, 2), spec(2, 3), spec(2, 4), spec(3, 2), spec(2, 3, 2, 1),
                 spec(2, 3, 2, 0, true), spec(3, 2, 2, 1, true), spec(2, 5, 2, 2)}) {
    const auto expected = cli::expected_vertex_count(s);
    ASSERT_TRUE(expected) << s.to_string();
    EXPECT_EQ(std::to_string(enumerate_lax_vertices(s).size()), expected->first) << s.to_string();
  }
}

TEST(Vertices, SortedCanonicalAndSatisfyPredicate) {
  const auto s = spec(2, 4, 2, 1, true);
  const auto vs = enumerate_lax_vertices(s);
  EXPECT_TRUE(std::is_sorted(vs.begin(), vs.end()));
  EXPECT_EQ(std::adjacent_find(vs.begin(), vs.end()), vs.end());
  for (const auto& v : vs) {
    EXPECT_TRUE(is_vertex(s, v));
    EXPECT_EQ(v.rep()[3], 0);
    EXPECT_EQ(oracle::pairing(cli::to_vec(v.rep()), cli::to_vec(ZLVector::basis_a(2, Modulus(4), 1)), 4), 0);
  }
}

TEST(Simplex, ContractExamples) {
  EXPECT_EQ(build_bases(spec(1, 2)).complex.count(1), 0u);
  const LaxVector pair[] = {lax(2, 3, {1, 0, 0, 0}), lax(2, 3, {0, 0, 1, 0})};
  EXPECT_TRUE(is_simplex(spec(2, 3), pair));
  const LaxVector paired[] = {lax(2, 3, {1, 0, 0, 0}), lax(2, 3, {0, 1, 0, 0})};
  EXPECT_FALSE(is_simplex(spec(2, 3), paired));
  const LaxVector repeated[] = {lax(2, 3, {1, 0, 0, 0}), lax(2, 3, {2, 0, 0, 0})};
  EXPECT_FALSE(is_simplex(spec(2, 3), repeated));
}

TEST(Simplex, LinkExcludesConstraintDirections) {
  const auto s = spec(2, 3, 2, 1);
  EXPECT_FALSE(is_vertex(s, lax(2, 3, {1, 0, 0, 0})));
  EXPECT_TRUE(is_vertex(s, lax(2, 3, {1, 0, 1, 0})));
  EXPECT_TRUE(is_vertex(s, lax(2, 3, {0, 0, 1, 0})));
  EXPECT_FALSE(is_vertex(s, lax(2, 3, {0, 1, 0, 0})));
}

TEST(Simplex, AgreesWithOracleOnRandomFamilies) {
  testing::Gen gen(41);
  for (const auto& s : {spec(2, 3), spec(2, 4, 2, 1), spec(3, 2, 2, 0, true)}) {
    for (int i = 0; i < 300; ++i) {
      std::vector<LaxVector> family;
      const auto size = gen.integer(1, 3);
      for (int j = 0; j < size; ++j) family.push_back(gen.vertex(s));
      bool want = true;
      std::vector<oracle::Vec> rows;
      for (auto c : constraint_vectors(s)) rows.push_back(cli::to_vec(c));
      for (std::size_t a = 0; a < family.size(); ++a) {
        for (std::size_t b = 0; b < a; ++b) {
          if (family[a] == family[b]) want = false;
          if (oracle::pairing(cli::to_vec(family[a].rep()), cli::to_vec(family[b].rep()), s.L) != 0) want = false;
        }
        rows.push_back(cli::to_vec(family[a].rep()));
      }
      if (want) want = oracle::brute_free_summand(rows, s.L);
      EXPECT_EQ(is_simplex(s, family), want) << s.to_string();
    }
  }
}

TEST(Build, EdgesAreExactlyTheJoinablePairs) {
  for (const auto& s : {spec(2, 3, 1), spec(2, 4, 1, 1), spec(3, 2, 1, 0, true)}) {
    const auto b = build_bases(s);
    std::size_t edges = 0;
    for (std::size_t i = 0; i < b.vertices.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        const LaxVector pair[] = {b.vertices[j], b.vertices[i]};
        if (is_simplex(s, pair)) {
          ++edges;
          EXPECT_TRUE(b.complex.contains(topology::Simplex{static_cast<topology::Vertex>(j),
                                                             static_cast<topology::Vertex>(i)}));
        }
      }
    }
    EXPECT_EQ(b.complex.count(1), edges);
  }
}

TEST(Build, EverySimplexSatisfiesThePredicate) {
  const auto b = build_bases(spec(3, 2, 2));
  EXPECT_TRUE(b.complex.is_downward_closed());
  for (int d = 0; d <= b.complex.dimension(); ++d) {
    for (const auto& s : b.complex.simplices(d)) EXPECT_TRUE(is_simplex(b.spec, b.lax_vertices_of(s)));
  }
  EXPECT_EQ(b.complex.complete_through(), 2);
}

TEST(Build, LowDegreeBettiNumbersVanish) {
  for (const auto& [s, up_to] : std::vector<std::pair<BasesSpec, int>>{
           {spec(2, 2, 1), 0}, {spec(2, 3, 1), 0}, {spec(3, 2, 2), 1}}) {
    const auto b = topology::reduced_betti(build_bases(s).complex, up_to).reduced_betti;
    EXPECT_EQ(b, std::vector<std::size_t>(static_cast<std::size_t>(up_to) + 1, 0)) << s.to_string();
  }
}

TEST(Build, GenusOneIsDiscrete) {
  const auto b = topology::reduced_betti(build_bases(spec(1, 5)).complex, 0).reduced_betti;
  EXPECT_EQ(b[0], enumerate_lax_vertices(spec(1, 5)).size() - 1);
}

TEST(RhoRank, ContractExamples) {
  const RhoChoice b1{RhoChoice::Kind::b, 1};
  EXPECT_EQ(rho_rank(ZLVector(1, Modulus(5), {0, 3}), b1), 2);
  EXPECT_EQ(rho_rank(ZLVector(1, Modulus(5), {1, 0}), b1), 0);
  EXPECT_EQ(rho_rank(ZLVector(1, Modulus(2), {0, 1}), b1), 1);
}

TEST(RhoRank, InvariantUnderSignAndBoundedByHalfL) {
  testing::Gen gen(42);
  for (int i = 0; i < 500; ++i) {
    const auto L = gen.integer(2, 20);
    const auto v = gen.vector(2, L);
    const RhoChoice rho{gen.integer(0, 1) ? RhoChoice::Kind::a : RhoChoice::Kind::b, static_cast<int>(gen.integer(1, 2))};
    EXPECT_EQ(rho_rank(v, rho), rho_rank(-v, rho));
    EXPECT_LE(2 * rho_rank(v, rho), L);
  }
}

TEST(ReductionCoefficient, ContractExamples) {
  const RhoChoice b1{RhoChoice::Kind::b, 1};
  EXPECT_EQ(rank_reduction_coefficient(ZLVector(1, Modulus(7), {1, 5}), ZLVector(1, Modulus(7), {1, 3}), b1), 6);
  EXPECT_EQ(rank_reduction_coefficient(ZLVector(1, Modulus(6), {1, 3}), ZLVector(1, Modulus(6), {1, 2}), b1), 5);
  EXPECT_EQ(rank_reduction_coefficient(ZLVector(1, Modulus(7), {1, 0}), ZLVector(1, Modulus(7), {1, 3}), b1), 0);
  EXPECT_THROW(rank_reduction_coefficient(ZLVector(1, Modulus(7), {1, 1}), ZLVector(1, Modulus(7), {1, 4}), b1),
               Error);
}

TEST(ReduceVertex, ContractExample) {
  const auto s = spec(2, 5);
  const auto rho = canonical_rho(s);
  const auto pivot = lax(2, 5, {0, 0, 0, 3});
  const auto v_x = lax(2, 5, {1, 0, 0, 3});
  const LaxVector context[] = {pivot};
  const auto bad = cli::reduction_violation(s, context, v_x, pivot, rho);
  EXPECT_FALSE(bad) << bad->dump();
  const auto r = reduce_vertex(s, context, v_x, pivot, rho);
  EXPECT_LT(rho_rank(r, rho), 2);
}

TEST(ReduceVertex, RandomInstancesAcrossLevels) {
  testing::Gen gen(43);
  int checked = 0;
  for (std::int64_t L = 2; L <= 9; ++L) {
    const auto s = spec(2, L);
    const auto rho = canonical_rho(s);
    for (int i = 0; i < 100; ++i) {
      const auto pivot = gen.vertex(s);
      if (rho_rank(pivot, rho) == 0) continue;
      const std::vector<LaxVector> context{pivot};
      const auto v_x = gen.joinable(s, context, 200);
      if (!v_x || rho_rank(*v_x, rho) < rho_rank(pivot, rho)) continue;
      const auto bad = cli::reduction_violation(s, context, *v_x, pivot, rho);
      ASSERT_FALSE(bad) << bad->dump();
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

}  // namespace
}  // namespace laxbases::bases
