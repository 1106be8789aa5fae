#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "gen.hpp"
#include "laxbases/errors.hpp"
#include "laxbases/simplicial.hpp"
#include "laxbases_cli/checks.hpp"
#include "laxbases_oracles/oracles.hpp"

namespace laxbases::topology {
namespace {

using Facets = std::vector<std::vector<Vertex>>;

SimplicialComplex triangle_boundary() { return SimplicialComplex::from_facets({{1, 2}, {2, 3}, {1, 3}}); }

TEST(Simplex, SortsAndRejectsBadInput) {
  const Simplex s{3, 1, 2};
  EXPECT_EQ(s[0], 1u);
  EXPECT_EQ(s.dimension(), 2);
  EXPECT_THROW(Simplex(std::vector<Vertex>{}), Error);
  EXPECT_THROW((Simplex{1, 1}), Error);
  EXPECT_EQ(s.facets().size(), 3u);
  EXPECT_EQ(s.facets()[0], (Simplex{2, 3}));
}

TEST(Complex, FromSimplicesRejectsMissingFaces) {
  EXPECT_THROW(SimplicialComplex::from_simplices({Simplex{0}, Simplex{0, 1}}), Error);
  const auto ok = SimplicialComplex::from_simplices({Simplex{0}, Simplex{1}, Simplex{0, 1}});
  EXPECT_EQ(ok.f_vector(), (std::vector<std::size_t>{2, 1}));
}

TEST(Complex, FVectorAndEuler) {
  const auto tet = SimplicialComplex::from_facets({{0, 1, 2, 3}});
  EXPECT_EQ(tet.f_vector(), (std::vector<std::size_t>{4, 6, 4, 1}));
  EXPECT_EQ(tet.euler_characteristic(), 1);
  EXPECT_TRUE(tet.is_downward_closed());
}

TEST(Star, ContractExamples) {
  const auto x = triangle_boundary();
  const auto s = star(x, Simplex{1});
  EXPECT_EQ(s.f_vector(), (std::vector<std::size_t>{3, 2}));
  EXPECT_TRUE(s.contains(Simplex{1, 2}));
  EXPECT_TRUE(s.contains(Simplex{1, 3}));
  EXPECT_FALSE(s.contains(Simplex{2, 3}));
  EXPECT_EQ(star(x, std::nullopt), x);
  const auto points = SimplicialComplex::from_facets({{1}, {2}});
  EXPECT_EQ(star(points, Simplex{1}).vertices(), (std::vector<Vertex>{1}));
}

TEST(Link, ContractExamples) {
  const auto x = triangle_boundary();
  const auto l = link(x, Simplex{1});
  EXPECT_EQ(l.f_vector(), (std::vector<std::size_t>{2}));
  EXPECT_EQ(l.vertices(), (std::vector<Vertex>{2, 3}));
  const auto tet = SimplicialComplex::from_facets({{1, 2, 3, 4}});
  const auto e = link(tet, Simplex{1, 2});
  EXPECT_EQ(e.f_vector(), (std::vector<std::size_t>{2, 1}));
  EXPECT_TRUE(e.contains(Simplex{3, 4}));
  EXPECT_EQ(link(x, std::nullopt), x);
}

TEST(Link, LiesInStarAndAvoidsTheSimplex) {
  laxbases::testing::Gen gen(31);
  for (int i = 0; i < 50; ++i) {
    Facets facets;
    for (int f = 0; f < 6; ++f) {
      std::set<Vertex> s;
      while (s.size() < 3) s.insert(static_cast<Vertex>(gen.integer(0, 7)));
      facets.emplace_back(s.begin(), s.end());
    }
    const auto x = SimplicialComplex::from_facets(facets);
    const auto v = x.vertices()[static_cast<std::size_t>(gen.integer(0, static_cast<long>(x.vertices().size()) - 1))];
    const auto st = star(x, Simplex{v});
    const auto lk = link(x, Simplex{v});
    for (int d = 0; d <= lk.dimension(); ++d) {
      for (const auto& s : lk.simplices(d)) {
        EXPECT_TRUE(st.contains(s));
        EXPECT_FALSE(s.contains(v));
        std::vector<Vertex> joined(s.vertices().begin(), s.vertices().end());
        joined.push_back(v);
        EXPECT_TRUE(x.contains(Simplex(joined)));
      }
    }
  }
}

TEST(Betti, ContractExamples) {
  for (int n = 1; n <= 2; ++n) {
    const auto x = SimplicialComplex::from_facets(oracle::simplex_boundary(n));
    auto b = reduced_betti(x, n).reduced_betti;
    std::vector<std::size_t> want(static_cast<std::size_t>(n) + 1, 0);
    want.back() = 1;
    EXPECT_EQ(b, want);
  }
  EXPECT_EQ(reduced_betti(SimplicialComplex::from_facets({{0}}), 0).reduced_betti, (std::vector<std::size_t>{0}));
  EXPECT_EQ(reduced_betti(SimplicialComplex::from_facets({{0}, {1}}), 0).reduced_betti, (std::vector<std::size_t>{1}));
}

TEST(Betti, KnownSpacesAgainstDenseOracle) {
  auto unite = oracle::simplex_boundary(1);
  for (auto f : oracle::simplex_boundary(2, 3)) unite.push_back(f);
  const std::vector<std::pair<std::vector<std::vector<std::uint32_t>>, std::vector<std::size_t>>> cases{
      {oracle::simplex_boundary(1), {0, 1}},
      {oracle::simplex_boundary(2), {0, 0, 1}},
      {oracle::simplex_boundary(3), {0, 0, 0, 1}},
      {unite, {1, 1, 1}},
      {oracle::seven_vertex_torus(), {0, 2, 1}},
      {{{0, 1, 2, 3}}, {0, 0, 0, 0}},
  };
  for (const auto& [facets, betti] : cases) {
    const auto bad = cli::betti_mismatch(facets, betti);
    EXPECT_FALSE(bad) << bad->dump();
  }
}

TEST(Betti, EulerPoincareOnRandomComplexes) {
  laxbases::testing::Gen gen(32);
  for (int i = 0; i < 60; ++i) {
    std::vector<std::vector<std::uint32_t>> facets;
    const auto count = gen.integer(1, 10);
    for (int f = 0; f < count; ++f) {
      std::set<std::uint32_t> s;
      const auto size = gen.integer(1, 4);
      while (static_cast<long>(s.size()) < size) s.insert(static_cast<std::uint32_t>(gen.integer(0, 8)));
      facets.emplace_back(s.begin(), s.end());
    }
    const auto x = SimplicialComplex::from_facets(facets);
    const auto b = reduced_betti(x, x.dimension()).reduced_betti;
    long alt = 0;
    for (std::size_t d = 0; d < b.size(); ++d) alt += (d % 2 ? -1 : 1) * static_cast<long>(b[d]);
    EXPECT_EQ(alt, x.euler_characteristic() - 1);
    EXPECT_EQ(b, oracle::reduced_betti_dense(facets));
  }
}

TEST(Betti, RefusesIncompleteSkeleton) {
  const auto x = SimplicialComplex::from_simplices({Simplex{0}, Simplex{1}, Simplex{0, 1}}, {}, 0);
  try {
    reduced_betti(x, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::incomplete_skeleton);
  }
}

TEST(Manifold, ContractExamples) {
  const SimplicialComplex empty;
  EXPECT_TRUE(is_combinatorial_sphere(empty, -1));
  EXPECT_TRUE(is_combinatorial_ball(empty, -1));
  EXPECT_TRUE(is_combinatorial_sphere(SimplicialComplex::from_facets(oracle::simplex_boundary(2)), 2));
  const auto edge = SimplicialComplex::from_facets({{0, 1}});
  EXPECT_TRUE(is_combinatorial_ball(edge, 1));
  EXPECT_FALSE(is_combinatorial_sphere(edge, 1));
}

TEST(Manifold, RecognitionOnFixtures) {
  const auto torus = SimplicialComplex::from_facets(oracle::seven_vertex_torus());
  EXPECT_FALSE(is_combinatorial_sphere(torus, 2));
  EXPECT_FALSE(is_combinatorial_ball(torus, 2));
  for (Vertex v = 0; v < 7; ++v) EXPECT_TRUE(is_combinatorial_sphere(link(torus, Simplex{v}), 1));
  const auto disk = SimplicialComplex::from_facets({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}});
  EXPECT_TRUE(is_combinatorial_ball(disk, 2));
  EXPECT_EQ(manifold_boundary(disk, 2).f_vector(), (std::vector<std::size_t>{5, 5}));
  EXPECT_TRUE(is_combinatorial_sphere(SimplicialComplex::from_facets({{0}, {1}}), 0));
  EXPECT_THROW(is_combinatorial_sphere(torus, 3), Error);
}

TEST(Components, ContractExamples) {
  EXPECT_EQ(connected_components(triangle_boundary()).size(), 1u);
  EXPECT_EQ(connected_components(SimplicialComplex::from_facets({{0}, {1}, {2}})).size(), 3u);
  EXPECT_EQ(connected_components(SimplicialComplex()).size(), 0u);
}

TEST(Components, AgreeWithBfsOracle) {
  laxbases::testing::Gen gen(33);
  for (int i = 0; i < 100; ++i) {
    Facets facets;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (Vertex v = 0; v < 12; ++v) facets.push_back({v});
    for (int e = 0; e < gen.integer(0, 14); ++e) {
      const auto a = static_cast<Vertex>(gen.integer(0, 11)), b = static_cast<Vertex>(gen.integer(0, 11));
      if (a == b) continue;
      facets.push_back({a, b});
      edges.emplace_back(a, b);
    }
    const auto comp = oracle::bfs_components(12, edges);
    const auto count = *std::max_element(comp.begin(), comp.end()) + 1;
    EXPECT_EQ(connected_components(SimplicialComplex::from_facets(facets)).size(), count);
  }
}

TEST(Quotient, FreeSwapOfTwoEdges) {
  const auto x = SimplicialComplex::from_facets({{0, 1}, {2, 3}});
  const auto q = quotient_without_rotations(x, GroupAction{{{2, 3, 0, 1}}});
  EXPECT_EQ(q.f_vector(), (std::vector<std::size_t>{2, 1}));
}

TEST(Quotient, FlippingAnEdgeIsARotation) {
  const auto x = SimplicialComplex::from_facets({{0, 1}});
  try {
    quotient_without_rotations(x, GroupAction{{{1, 0}}});
    FAIL();
  } catch (const RotationViolation& e) {
    EXPECT_EQ(e.simplex(), (Simplex{0, 1}));
  }
}

TEST(Quotient, HexagonHalfTurnGivesTriangle) {
  Facets hexagon;
  for (Vertex i = 0; i < 6; ++i) hexagon.push_back({i, (i + 1) % 6});
  const auto x = SimplicialComplex::from_facets(hexagon);
  const auto q = quotient_without_rotations(x, GroupAction{{{3, 4, 5, 0, 1, 2}}});
  EXPECT_EQ(q.f_vector(), (std::vector<std::size_t>{3, 3}));
  EXPECT_TRUE(is_combinatorial_sphere(q, 1));
}

TEST(Quotient, HexagonThirdTurnIsNotSimplicial) {
  Facets hexagon;
  for (Vertex i = 0; i < 6; ++i) hexagon.push_back({i, (i + 1) % 6});
  const auto x = SimplicialComplex::from_facets(hexagon);
  try {
    quotient_without_rotations(x, GroupAction{{{2, 3, 4, 5, 0, 1}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::non_simplicial_quotient);
  }
}

TEST(Quotient, FindRotationAndGroupClosure) {
  const auto x = SimplicialComplex::from_facets({{0, 1, 2}});
  const auto group = generate_group(GroupAction{{{1, 2, 0}}}, 3);
  EXPECT_EQ(group.size(), 3u);
  const auto w = find_rotation(x, group);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->simplex, (Simplex{0, 1, 2}));
}

}  // namespace
}  // namespace laxbases::topology
