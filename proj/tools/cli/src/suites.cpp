#include <algorithm>
#include <set>

#include "commands.hpp"
#include "laxbases/errors.hpp"
#include "laxbases/heisenberg.hpp"
#include "laxbases/simplicial.hpp"
#include "laxbases/sp_group.hpp"
#include "laxbases_cli/cache.hpp"
#include "laxbases_cli/checks.hpp"
#include "laxbases_oracles/oracles.hpp"

namespace laxbases::cli::detail {

using bases::BasesSpec;
using linalg::IntMatrix;
using linalg::LaxVector;
using linalg::Modulus;
using linalg::ZLVector;
using topology::Vertex;

namespace {

ZLVector random_vector(std::mt19937_64& rng, int g, std::int64_t L) {
  std::uniform_int_distribution<std::int64_t> coord(0, L - 1);
  std::vector<std::int64_t> c(2 * static_cast<std::size_t>(g));
  for (auto& x : c) x = coord(rng);
  return ZLVector(g, Modulus(L), std::move(c));
}

std::size_t power(std::int64_t base, int exp) {
  std::size_t out = 1;
  for (int i = 0; i < exp; ++i) out *= static_cast<std::size_t>(base);
  return out;
}

}  // namespace

void suite_linalg(Context& ctx) {
  const auto g = ctx.job.spec.g;
  const auto L = ctx.job.spec.L;
  const Modulus m(L);
  const auto total = power(L, 2 * g);

  if (total <= 20000) {
    Stopwatch t;
    std::size_t tested = 0;
    std::optional<Json> bad;
    const bool exhaustive = total <= 1296;
    auto test = [&](const ZLVector& v) {
      ++tested;
      if (!bad) bad = primitive_mismatch(v);
    };
    if (exhaustive) {
      oracle::for_each_vector(2 * static_cast<std::size_t>(g), L, [&](const oracle::Vec& v) {
        test(ZLVector(g, m, v));
        return true;
      });
    } else {
      for (int i = 0; i < 200; ++i) test(random_vector(ctx.rng, g, L));
    }
    record(ctx, "primitive_agreement", std::nullopt, std::to_string(tested), std::to_string(tested), !bad,
           exhaustive ? "exhaustive brute-force factorisation search" : "brute-force factorisation search, sampled",
           t.ms(), bad);

    Stopwatch ts;
    std::size_t families = 0;
    bad.reset();
    std::uniform_int_distribution<int> size(1, std::min(2 * g, 3));
    for (int i = 0; i < 500; ++i) {
      std::vector<ZLVector> vs;
      const int k = size(ctx.rng);
      for (int j = 0; j < k; ++j) vs.push_back(random_vector(ctx.rng, g, L));
      ++families;
      if (!bad) bad = summand_mismatch(vs);
    }
    // Isotropic families through the basis, where most answers are positive.
    for (int i = 1; i <= g; ++i) {
      std::vector<ZLVector> vs{ZLVector::basis_a(g, m, i)};
      for (int j = i + 1; j <= g; ++j) vs.push_back(ZLVector::basis_a(g, m, j) + ZLVector::basis_b(g, m, i));
      ++families;
      if (!bad) bad = summand_mismatch(vs);
    }
    record(ctx, "summand_agreement", std::nullopt, std::to_string(families), std::to_string(families), !bad,
           "retraction search over all linear forms", ts.ms(), bad);
  } else {
    record(ctx, "primitive_agreement", std::nullopt, "skipped", "", true,
           "instance too large for brute force", 0);
  }

  Stopwatch tn;
  std::optional<Json> bad;
  std::uniform_int_distribution<int> dim(1, 4);
  std::uniform_int_distribution<long> entry(-50, 50);
  for (int i = 0; i < 100 && !bad; ++i) {
    IntMatrix a(static_cast<std::size_t>(dim(ctx.rng)), static_cast<std::size_t>(dim(ctx.rng)));
    for (std::size_t r = 0; r < a.rows(); ++r) {
      for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) = entry(ctx.rng);
    }
    bad = snf_violation(a);
  }
  record(ctx, "smith_normal_form", std::nullopt, "100", "100", !bad, "Leibniz minors and unimodularity", tn.ms(),
         bad);
}

void suite_simplicial(Context& ctx) {
  struct Fixture {
    std::string name;
    std::vector<std::vector<std::uint32_t>> facets;
    std::vector<std::size_t> betti;
  };
  std::vector<Fixture> fixtures;
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::size_t> b(static_cast<std::size_t>(n) + 1, 0);
    b.back() = 1;
    fixtures.push_back({"sphere S^" + std::to_string(n), oracle::simplex_boundary(n), b});
  }
  auto unite = oracle::simplex_boundary(1);
  for (auto f : oracle::simplex_boundary(2, 3)) unite.push_back(f);
  fixtures.push_back({"S^1 + S^2", unite, {1, 1, 1}});
  fixtures.push_back({"7-vertex torus", oracle::seven_vertex_torus(), {0, 2, 1}});
  for (const auto& f : fixtures) {
    Stopwatch tf;
    const auto bad = betti_mismatch(f.facets, f.betti);
    std::string expected;
    for (auto b : f.betti) expected += (expected.empty() ? "" : ",") + std::to_string(b);
    record(ctx, "betti " + f.name, std::nullopt, bad ? "mismatch" : expected, expected, !bad,
           "known values and dense rational elimination", tf.ms(), bad);
  }

  Stopwatch tr;
  using topology::SimplicialComplex;
  const auto s1 = SimplicialComplex::from_facets(oracle::simplex_boundary(1));
  const auto s2 = SimplicialComplex::from_facets(oracle::simplex_boundary(2));
  const auto torus = SimplicialComplex::from_facets(oracle::seven_vertex_torus());
  const bool recognition = topology::is_combinatorial_sphere(s1, 1) && topology::is_combinatorial_sphere(s2, 2) &&
                           !topology::is_combinatorial_sphere(torus, 2) &&
                           topology::is_combinatorial_sphere(topology::link(torus, topology::Simplex{0}), 1);
  record(ctx, "sphere_recognition", std::nullopt, recognition ? "true" : "false", "true", recognition,
         "known fixtures", tr.ms(), Json{{"fixtures", "S^1, S^2, torus, link of a torus vertex"}});

  Stopwatch tq;
  std::vector<std::vector<Vertex>> hexagon;
  for (Vertex i = 0; i < 6; ++i) hexagon.push_back({i, (i + 1) % 6});
  const auto hex = SimplicialComplex::from_facets(hexagon);
  topology::GroupAction half_turn{{{3, 4, 5, 0, 1, 2}}};
  const auto q = topology::quotient_without_rotations(hex, half_turn);
  const bool triangle = q.f_vector() == std::vector<std::size_t>{3, 3};
  record(ctx, "quotient_hexagon", std::nullopt, triangle ? "3-cycle" : "other", "3-cycle", triangle,
         "known fixture", tq.ms());
}

void suite_bases(Context& ctx) {
  const auto& spec = ctx.job.spec;
  spec.validate();
  vertex_count_checks(ctx, spec);
  Stopwatch t;
  auto cb = load_or_build(spec, ctx.cache_dir);
  record(ctx, "build", std::nullopt, cb.hit ? "hit" : "built", "", true, "none", t.ms());
  const auto& x = cb.complex;
  complex_checks(ctx, x);

  const int claim = spec.g - spec.delta_k - 2;
  const int up_to = std::min(claim, std::min(spec.max_dim, x.complex.complete_through()) - 1);
  if (up_to >= 0 && !x.vertices.empty()) betti_checks(ctx, x, up_to);

  if (x.vertices.empty() || x.complex.complete_through() < 1) return;
  const bases::BasesGraph graph(x);
  if (claim >= 0) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    const auto n = static_cast<Vertex>(graph.vertex_count());
    if (n <= 150) {
      for (Vertex i = 0; i < n; ++i) {
        for (Vertex j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
      }
    } else {
      std::uniform_int_distribution<Vertex> pick(0, n - 1);
      for (int i = 0; i < 300; ++i) pairs.emplace_back(pick(ctx.rng), pick(ctx.rng));
    }
    connect_checks(ctx, graph, pairs);
  }
  if (claim >= 1 && x.complex.complete_through() >= 2) fill_checks(ctx, graph, 10, 8);

  // Rank reduction along edges whose far end has rank at least the pivot's.
  Stopwatch tr;
  const auto rho = bases::canonical_rho(spec);
  std::size_t instances = 0;
  std::optional<Json> bad;
  for (const auto& e : x.complex.simplices(1)) {
    for (int flip = 0; flip < 2 && !bad; ++flip) {
      const auto& pivot = x.vertices[e[flip]];
      const auto& other = x.vertices[e[1 - flip]];
      const auto R = bases::rho_rank(pivot, rho);
      if (R == 0 || bases::rho_rank(other, rho) < R) continue;
      ++instances;
      bad = reduction_violation(spec, std::span<const LaxVector>(&pivot, 1), other, pivot, rho);
    }
    if (bad || instances >= 1000) break;
  }
  record(ctx, "rank_reduction", std::nullopt, std::to_string(instances), std::to_string(instances), !bad,
         "rank recomputation, pairing and retraction search", tr.ms(), bad);
}

void suite_sp(Context& ctx) {
  const auto g = ctx.job.spec.g;
  const auto L = ctx.job.spec.L;
  const Modulus m(L);
  const auto estimate = sp::estimated_group_order(g, m);
  orbit_checks(ctx, g, L, linalg::canonical_lax(ZLVector::basis_a(g, m, 1)));
  if (estimate > 1'000'000) {
    record(ctx, "group_order", std::nullopt, "skipped", estimate.get_str(), true,
           "estimated order exceeds the enumeration guard", 0);
    return;
  }

  Stopwatch t;
  const auto group = sp::enumerate_group(g, m);
  record(ctx, "group_order", std::nullopt, std::to_string(group.size()), estimate.get_str(), estimate == group.size(),
         "prime-power order formula", t.ms());
  if ((g == 1 && L <= 5) || (g == 2 && L == 2)) {
    Stopwatch tb;
    const auto brute = oracle::brute_symplectic_order(g, L);
    record(ctx, "group_order_brute_force", std::nullopt, std::to_string(group.size()), std::to_string(brute),
           brute == group.size(), "exhaustive matrix enumeration", tb.ms());
  }

  Stopwatch ts;
  const auto n = 2 * static_cast<std::size_t>(g);
  std::optional<Json> bad;
  for (std::size_t e = 0; e < group.size() && !bad; ++e) {
    const auto& a = group[e];
    std::vector<oracle::Vec> cols(n, oracle::Vec(n));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) cols[c][r] = a(r, c);
    }
    for (std::size_t i = 0; i < n && !bad; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        oracle::Vec ei(n, 0), ej(n, 0);
        ei[i] = 1;
        ej[j] = 1;
        if (oracle::pairing(cols[i], cols[j], L) != oracle::pairing(ei, ej, L)) {
          bad = Json{{"element", a.to_string()}};
          break;
        }
      }
    }
    if (!bad && !(a * a.inverse() == sp::SpElement::identity(g, m))) {
      bad = Json{{"element", a.to_string()}, {"note", "inverse"}};
    }
  }
  record(ctx, "elements_symplectic", std::nullopt, std::to_string(group.size()), std::to_string(group.size()), !bad,
         "column pairings recomputed", ts.ms(), bad);

  Stopwatch tc;
  bad.reset();
  const std::set<sp::SpElement> members(group.begin(), group.end());
  std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
  for (int i = 0; i < 200 && !bad; ++i) {
    const auto& a = group[pick(ctx.rng)];
    const auto& b = group[pick(ctx.rng)];
    if (!members.count(a * b)) bad = Json{{"a", a.to_string()}, {"b", b.to_string()}};
  }
  record(ctx, "closure_under_products", std::nullopt, "200", "200", !bad, "random products looked up", tc.ms(), bad);

  const BasesSpec full{g, L, 0, false, std::min(g - 1, 2)};
  if (g == 1 || bases::enumerate_lax_vertices(full).size() <= 400) {
    Stopwatch tr;
    const auto x = bases::build_bases(full);
    const auto rot = sp::check_without_rotations(x, group);
    std::optional<Json> witness;
    if (!rot.without_rotations) {
      witness = Json{{"simplex", to_json(std::span<const LaxVector>(x.lax_vertices_of(*rot.witness_simplex)))},
                     {"element", group[*rot.witness_element].to_string()}};
    }
    record(ctx, "without_rotations", std::nullopt, rot.without_rotations ? "true" : "false", "true",
           rot.without_rotations, "exhaustive: every element against every simplex", tr.ms(), witness);
  }
}

void suite_heisenberg(Context& ctx) {
  const auto g = ctx.job.spec.g;
  const int k = std::min(ctx.job.k, g);
  const heisenberg::KContext kc(g, k);
  std::uniform_int_distribution<long> coef(-20, 20);
  auto random_w = [&] {
    std::vector<long> w(kc.dimension());
    for (auto& c : w) c = coef(ctx.rng);
    return w;
  };

  Stopwatch ta;
  std::optional<Json> bad;
  for (int i = 0; i < 500 && !bad; ++i) {
    const auto x = heisenberg::k_element(kc, coef(ctx.rng), random_w());
    const auto y = heisenberg::k_element(kc, coef(ctx.rng), random_w());
    const auto z = heisenberg::k_element(kc, coef(ctx.rng), random_w());
    const auto e = heisenberg::k_identity(kc);
    const bool ok = heisenberg::k_multiply(heisenberg::k_multiply(x, y, kc), z, kc) ==
                        heisenberg::k_multiply(x, heisenberg::k_multiply(y, z, kc), kc) &&
                    heisenberg::k_multiply(x, e, kc) == x && heisenberg::k_multiply(e, x, kc) == x &&
                    heisenberg::k_multiply(x, heisenberg::k_inverse(x, kc), kc) == e;
    if (!ok) bad = Json{{"x", x.to_string()}, {"y", y.to_string()}, {"z", z.to_string()}};
  }
  record(ctx, "group_axioms", std::nullopt, "500", "500", !bad, "direct evaluation on random triples", ta.ms(), bad);

  Stopwatch tc;
  bad.reset();
  for (int i = 0; i < 1000 && !bad; ++i) bad = commutator_mismatch(kc, random_w(), random_w());
  record(ctx, "commutator_identity", std::nullopt, "1000", "1000", !bad, "pairing evaluated on ambient coordinates",
         tc.ms(), bad);

  if (k < g) {
    Stopwatch te;
    bad.reset();
    for (int i = 0; i < 200 && !bad; ++i) {
      auto w1 = random_w(), w2 = random_w();
      w1[0] = 0;
      w2[0] = 0;
      const auto x = heisenberg::k_element(kc, coef(ctx.rng), w1);
      const auto y = heisenberg::k_element(kc, coef(ctx.rng), w2);
      const auto px = heisenberg::embedding_matrix(kc, x);
      if (!sp::is_symplectic(px, Modulus(0))) {
        bad = Json{{"x", x.to_string()}, {"note", "image is not symplectic"}};
        break;
      }
      const auto xy = heisenberg::k_multiply(x, y, kc);
      if (xy.w[0] == 0 && !(px * heisenberg::embedding_matrix(kc, y) == heisenberg::embedding_matrix(kc, xy))) {
        bad = Json{{"x", x.to_string()}, {"y", y.to_string()}, {"note", "not multiplicative"}};
      }
    }
    record(ctx, "embedding_homomorphism", std::nullopt, "200", "200", !bad,
           "matrix products compared over Z", te.ms(), bad);

    Stopwatch tk;
    const auto rep = heisenberg::compute_coinvariants(kc, ctx.job.spec.L);
    record(ctx, "coinvariant_dimension", std::nullopt, std::to_string(rep.dimension), "0", rep.dimension == 0,
           "exact rational rank (fraction-free elimination)", tk.ms(),
           Json{{"g", g}, {"k", k}, {"generators_used", rep.generators_used}, {"enlarged", rep.enlarged}});
  }
}

}  // namespace laxbases::cli::detail
