#include "commands.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "laxbases/errors.hpp"
#include "laxbases/heisenberg.hpp"
#include "laxbases/sp_group.hpp"
#include "laxbases_cli/cache.hpp"
#include "laxbases_cli/checks.hpp"
#include "laxbases_oracles/oracles.hpp"

namespace laxbases::cli::detail {

using bases::BasesComplex;
using bases::BasesGraph;
using bases::BasesSpec;
using linalg::LaxVector;
using linalg::ZLVector;
using topology::Simplex;
using topology::Vertex;

Check& record(Context& ctx, std::string name, std::optional<int> dim, std::string value, std::string expected,
              bool pass, std::string oracle, double ms, std::optional<Json> witness) {
  if (!pass && !witness) witness = Json{{"value", value}, {"expected", expected}};
  ctx.checks.push_back(Check{std::move(name), dim, std::move(value), std::move(expected), pass, ms,
                             std::move(oracle), pass ? std::nullopt : std::move(witness)});
  return ctx.checks.back();
}

namespace {

Json simplex_json(const BasesComplex& x, const Simplex& s) {
  const auto lax = x.lax_vertices_of(s);
  return to_json(std::span<const LaxVector>(lax));
}

LaxVector parse_vertex(const std::string& text, const BasesSpec& spec) {
  std::vector<std::int64_t> coords;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      coords.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(Errc::invalid_input, "cannot parse coordinate '" + item + "' in '" + text + "'");
    }
  }
  if (coords.size() != 2 * static_cast<std::size_t>(spec.g)) {
    fail(Errc::dimension_mismatch, "'" + text + "' needs " + std::to_string(2 * spec.g) + " coordinates");
  }
  const ZLVector v(spec.g, spec.modulus(), coords);
  if (!bases::is_vertex(spec, v)) fail(Errc::invalid_input, v.to_string() + " is not a vertex of " + spec.to_string());
  return linalg::canonical_lax(v);
}

bool brute_affordable(const BasesSpec& spec, double limit) {
  double total = 1;
  for (int i = 0; i < 2 * spec.g; ++i) total *= static_cast<double>(spec.L);
  return total <= limit;
}

std::string cache_state(const CachedBuild& cb, bool cached) {
  if (!cached) return "uncached";
  if (cb.hit) return "hit";
  return cb.rebuilt_invalid ? "rebuilt-invalid" : "built";
}

BasesComplex obtain(Context& ctx, const BasesSpec& spec) {
  Stopwatch t;
  auto cb = load_or_build(spec, ctx.cache_dir);
  record(ctx, "build", std::nullopt, cache_state(cb, ctx.cache_dir.has_value()), "", true,
         "none", t.ms());
  return std::move(cb.complex);
}

}  // namespace

void vertex_count_checks(Context& ctx, const BasesSpec& spec) {
  Stopwatch t;
  const auto n = bases::enumerate_lax_vertices(spec).size();
  const auto expected = expected_vertex_count(spec);
  const auto value = std::to_string(n);
  if (expected) {
    record(ctx, "vertex_count", 0, value, expected->first, value == expected->first, expected->second, t.ms(),
           Json{{"enumerated", n}, {"oracle_count", expected->first}});
  } else {
    record(ctx, "vertex_count", 0, value, "", true, "enumeration only (instance too large for brute force)", t.ms());
  }
}

void complex_checks(Context& ctx, const BasesComplex& x) {
  const auto f = x.complex.f_vector();
  for (std::size_t d = 0; d < f.size(); ++d) {
    record(ctx, "f", static_cast<int>(d), std::to_string(f[d]), "", true, "clique extension with summand test", 0);
  }

  Stopwatch t;
  std::size_t checked = 0;
  std::optional<Json> bad;
  for (const auto& v : x.vertices) {
    ++checked;
    if (!bad && !bases::is_vertex(x.spec, v)) bad = Json{{"vertex", v.to_string()}};
  }
  for (int d = 1; d <= x.complex.dimension() && !bad; ++d) {
    for (const auto& s : x.complex.simplices(d)) {
      ++checked;
      const auto lax = x.lax_vertices_of(s);
      if (!bases::is_simplex(x.spec, lax)) {
        bad = Json{{"simplex", simplex_json(x, s)}};
        break;
      }
    }
  }
  record(ctx, "simplex_predicate", std::nullopt, std::to_string(checked), std::to_string(checked), !bad,
         "vertex and simplex predicates re-evaluated", t.ms(), bad);

  Stopwatch tc;
  record(ctx, "downward_closed", std::nullopt, x.complex.is_downward_closed() ? "true" : "false", "true",
         x.complex.is_downward_closed(), "facet enumeration", tc.ms());

  const auto n = x.vertices.size();
  if (n <= 2000 && x.complex.complete_through() >= 1) {
    Stopwatch te;
    std::optional<Json> miss;
    std::size_t edges = 0;
    for (Vertex i = 0; i < n && !miss; ++i) {
      for (Vertex j = i + 1; j < n; ++j) {
        const LaxVector pair[] = {x.vertices[i], x.vertices[j]};
        const bool predicate = bases::is_simplex(x.spec, pair);
        const bool present = x.complex.contains(Simplex{i, j});
        edges += predicate;
        if (predicate != present) {
          miss = Json{{"pair", to_json(std::span<const LaxVector>(pair))}, {"predicate", predicate},
                      {"in_complex", present}};
          break;
        }
      }
    }
    record(ctx, "edge_completeness", 1, std::to_string(x.complex.count(1)), std::to_string(edges), !miss,
           "pairwise predicate scan", te.ms(), miss);
  }
}

void betti_checks(Context& ctx, const BasesComplex& x, int up_to) {
  const int claim = x.spec.g - x.spec.delta_k - 2;
  Stopwatch t;
  const auto rep = topology::reduced_betti(x.complex, up_to);
  const double ms = t.ms();
  const Json context{{"f_vector", x.complex.f_vector()}, {"boundary_ranks", rep.boundary_ranks}};
  for (int i = 0; i <= up_to; ++i) {
    const auto b = rep.reduced_betti[static_cast<std::size_t>(i)];
    const bool claimed = i <= claim;
    record(ctx, "reduced_betti", i, std::to_string(b), claimed ? "0" : "", !claimed || b == 0,
           "exact rational rank (fraction-free elimination)", i == 0 ? ms : 0, std::make_optional(context));
  }

  const auto n = x.vertices.size();
  if (n > 0) {
    Stopwatch tb;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : x.complex.simplices(1)) edges.emplace_back(e[0], e[1]);
    const auto comp = oracle::bfs_components(n, edges);
    const auto comps = *std::max_element(comp.begin(), comp.end()) + 1;
    const auto b0 = rep.reduced_betti[0];
    record(ctx, "components_bfs", 0, std::to_string(comps - 1), std::to_string(b0), comps - 1 == b0,
           "BFS reachability", tb.ms(), Json{{"components", comps}, {"reduced_betti_0", b0}});
  }

  // Ranks over F_p never exceed rational ranks, so these bound b~_i from above.
  constexpr std::int64_t p = 1000003;
  auto rank_p = [&](int d) -> std::size_t {
    if (d == 0) return x.complex.count(0) > 0 ? 1 : 0;
    if (d > x.complex.dimension()) return 0;
    const auto m = x.complex.boundary_matrix(d);
    std::vector<std::map<std::size_t, std::int64_t>> cols;
    for (const auto& col : m.columns) {
      std::map<std::size_t, std::int64_t> c;
      for (auto [r, v] : col) c[r] = v;
      cols.push_back(std::move(c));
    }
    return oracle::rank_mod_p(cols, p);
  };
  std::vector<std::size_t> ranks;
  for (int d = 0; up_to >= 1 && d <= up_to + 1; ++d) ranks.push_back(rank_p(d));
  for (int i = 1; i <= up_to; ++i) {
    Stopwatch tp;
    const auto fi = x.complex.count(i);
    const auto bp = fi - ranks[static_cast<std::size_t>(i)] - ranks[static_cast<std::size_t>(i) + 1];
    const auto b = rep.reduced_betti[static_cast<std::size_t>(i)];
    record(ctx, "reduced_betti_mod_p", i, std::to_string(bp), ">= " + std::to_string(b), bp >= b,
           "rank over F_1000003 (upper bound for the rational Betti number)", tp.ms(),
           Json{{"mod_p_betti", bp}, {"rational_betti", b}});
  }
}

void connect_checks(Context& ctx, const BasesGraph& graph, const std::vector<std::pair<Vertex, Vertex>>& pairs) {
  Stopwatch t;
  const auto& spec = graph.spec();
  const auto n = graph.vertex_count();
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : graph.bases().complex.simplices(1)) edges.emplace_back(e[0], e[1]);
  const auto comp = oracle::bfs_components(n, edges);
  const bool brute = brute_affordable(spec, 4096);
  std::vector<oracle::Vec> constraints;
  for (const auto& a : bases::constraint_vectors(spec)) constraints.push_back(to_vec(a));

  std::size_t succeeded = 0, reachable = 0, verified = 0, agree = 0, max_len = 0, max_steps = 0, w_phase = 0;
  std::optional<Json> disagreement, unverified;
  std::vector<LaxVector> last_path;
  for (auto [a, b] : pairs) {
    const auto& u = graph.vertex(a);
    const auto& w = graph.vertex(b);
    const bool bfs = comp[a] == comp[b];
    reachable += bfs;
    std::optional<bases::ConnectResult> res;
    std::string error;
    try {
      res = bases::connect_vertices(graph, u, w, ctx.job.budget);
    } catch (const BudgetExceeded&) {
      ctx.error_witness = Json{{"from", u.to_string()}, {"to", w.to_string()}};
      throw;
    } catch (const Error& e) {
      if (e.code() != Errc::certification_failure) throw;
      error = e.what();
    }
    const bool ok = res.has_value();
    succeeded += ok;
    if (ok == bfs) {
      ++agree;
    } else if (!disagreement) {
      disagreement = Json{{"from", u.to_string()}, {"to", w.to_string()}, {"bfs_reachable", bfs}, {"error", error}};
    }
    if (!ok) continue;
    bool good = bases::verify_path(graph, res->path);
    for (std::size_t i = 0; good && i + 1 < res->path.size(); ++i) {
      const auto x = to_vec(res->path[i].rep());
      const auto y = to_vec(res->path[i + 1].rep());
      if (x == y) continue;
      if (oracle::pairing(x, y, spec.L) != 0) good = false;
      if (good && brute) {
        auto family = constraints;
        family.push_back(x);
        family.push_back(y);
        good = oracle::brute_free_summand(family, spec.L);
      }
    }
    verified += good;
    if (!good && !unverified) {
      unverified = Json{{"from", u.to_string()}, {"to", w.to_string()},
                        {"path", to_json(std::span<const LaxVector>(res->path))}};
    }
    max_len = std::max(max_len, res->path.size() - 1);
    max_steps = std::max(max_steps, res->steps);
    w_phase += res->entered_w_phase;
    last_path = res->path;
  }
  const double ms = t.ms();
  const std::string budget = std::to_string(ctx.job.budget.value_or(20 * static_cast<std::size_t>(spec.L)));
  record(ctx, "connected_pairs", 0, std::to_string(succeeded), std::to_string(reachable), !disagreement,
         "BFS reachability", ms, disagreement);
  record(ctx, "bfs_agreement", 0, std::to_string(agree), std::to_string(pairs.size()), agree == pairs.size(),
         "BFS reachability", 0, disagreement);
  record(ctx, "paths_verified", 1, std::to_string(verified), std::to_string(succeeded), verified == succeeded,
         brute ? "edge predicate and retraction search per edge" : "edge predicate per edge", 0, unverified);
  record(ctx, "max_path_length", 1, std::to_string(max_len), "", true, "none", 0);
  record(ctx, "max_reduction_steps", std::nullopt, std::to_string(max_steps), "<= " + budget, true, "step budget", 0);
  record(ctx, "w_phase_entries", std::nullopt, std::to_string(w_phase), "", true, "none", 0);
  if (pairs.size() == 1 && succeeded == 1) {
    std::string path;
    for (const auto& v : last_path) path += (path.empty() ? "" : " - ") + v.to_string();
    record(ctx, "path", 1, path, "", true, "none", 0);
  }
}

void fill_checks(Context& ctx, const BasesGraph& graph, std::size_t cycles, std::size_t max_length) {
  if (max_length < 3) fail(Errc::invalid_input, "cycles need length at least 3");
  Stopwatch t;
  std::size_t filled = 0, certified = 0, max_steps = 0, max_moves = 0, w_phase = 0, total_moves = 0;
  std::optional<Json> failure;
  std::uniform_int_distribution<std::size_t> length(3, max_length);
  for (std::size_t c = 0; c < cycles; ++c) {
    const auto cycle = bases::random_cycle(graph, length(ctx.rng), ctx.rng);
    const auto map = bases::SphereMap::from_cycle(cycle);
    bases::FillResult res;
    try {
      res = bases::fill_loop(graph, map, ctx.job.budget);
    } catch (const BudgetExceeded&) {
      ctx.error_witness = Json{{"cycle", to_json(std::span<const LaxVector>(cycle))}};
      throw;
    }
    const auto replay = bases::replay_moves(graph, map.cyclic_word(), res.moves);
    const bool constant = std::all_of(res.final_loop.begin(), res.final_loop.end(),
                                      [&](const LaxVector& v) { return v == res.final_loop.front(); });
    const bool ok_replay = replay && *replay == res.final_loop;
    filled += constant;
    certified += ok_replay;
    if ((!constant || !ok_replay) && !failure) {
      failure = Json{{"cycle", to_json(std::span<const LaxVector>(cycle))},
                     {"final_loop", to_json(std::span<const LaxVector>(res.final_loop))},
                     {"replay_certified", ok_replay}};
    }
    max_steps = std::max(max_steps, res.steps);
    max_moves = std::max(max_moves, res.moves.size());
    total_moves += res.moves.size();
    w_phase += res.entered_w_phase;
  }
  record(ctx, "loops_filled", 1, std::to_string(filled), std::to_string(cycles), filled == cycles,
         "move log replay", t.ms(), failure);
  record(ctx, "moves_certified", 1, std::to_string(certified), std::to_string(cycles), certified == cycles,
         "per-move certificate against the simplex predicate", 0, failure);
  record(ctx, "max_rounds", std::nullopt, std::to_string(max_steps), "", true, "step budget", 0);
  record(ctx, "max_moves", std::nullopt, std::to_string(max_moves), "", true, "none", 0);
  record(ctx, "total_moves", std::nullopt, std::to_string(total_moves), "", true, "none", 0);
  record(ctx, "w_phase_entries", std::nullopt, std::to_string(w_phase), "", true, "none", 0);
}

void orbit_checks(Context& ctx, int g, std::int64_t L, const LaxVector& base) {
  Stopwatch t;
  const auto gens = sp::all_transvections(g, linalg::Modulus(L));
  const auto cert = sp::orbit(base, gens);
  const double ms = t.ms();
  BasesSpec full{g, L, 0, false, 0};
  const auto verts = bases::enumerate_lax_vertices(full);
  const std::set<LaxVector> reached(cert.reached.begin(), cert.reached.end());
  const std::set<LaxVector> all(verts.begin(), verts.end());
  std::optional<Json> witness;
  for (const auto& v : all) {
    if (!reached.count(v)) {
      witness = Json{{"missing", v.to_string()}};
      break;
    }
  }
  for (const auto& v : reached) {
    if (witness) break;
    if (!all.count(v)) witness = Json{{"extra", v.to_string()}};
  }
  const std::string where = "orbit of " + base.to_string() + " under " + std::to_string(gens.size()) + " transvections";
  record(ctx, "orbit_size", 0, std::to_string(reached.size()), std::to_string(all.size()),
         reached.size() == all.size(), "vertex enumeration", ms, Json{{"orbit", where}});
  record(ctx, "orbit_equals_vertex_set", 0, witness ? "false" : "true", "true", !witness,
         "exhaustive set comparison", 0, witness);
  Stopwatch tr;
  const bool replay = sp::verify_certificate(cert, gens);
  record(ctx, "orbit_certificate_replay", 0, replay ? "true" : "false", "true", replay, "word replay", tr.ms(),
         Json{{"orbit", where}});
}

void cmd_vertices(Context& ctx) { vertex_count_checks(ctx, ctx.job.spec); }

void cmd_build(Context& ctx) {
  const auto x = obtain(ctx, ctx.job.spec);
  complex_checks(ctx, x);
}

void cmd_betti(Context& ctx) {
  auto spec = ctx.job.spec;
  const int claim = spec.g - spec.delta_k - 2;
  const int up_to = ctx.job.up_to.value_or(std::max(claim, 0));
  if (up_to < 0) fail(Errc::invalid_input, "--up-to must be non-negative");
  spec.max_dim = up_to + 1;
  const auto x = obtain(ctx, spec);
  betti_checks(ctx, x, up_to);
}

void cmd_orbit(Context& ctx) {
  const auto& spec = ctx.job.spec;
  spec.validate();
  if (spec.delta_k != 0 || spec.restrict_W) {
    fail(Errc::invalid_input, "orbit acts on the full vertex set; drop --delta-k and --restrict-w");
  }
  const auto base = ctx.job.from ? parse_vertex(*ctx.job.from, spec)
                                 : linalg::canonical_lax(ZLVector::basis_a(spec.g, spec.modulus(), 1));
  orbit_checks(ctx, spec.g, spec.L, base);
}

void cmd_connect(Context& ctx) {
  auto spec = ctx.job.spec;
  spec.validate();
  if (ctx.job.from.has_value() != ctx.job.to.has_value()) {
    fail(Errc::invalid_input, "give both --from and --to, or neither for all pairs");
  }
  if (spec.g - spec.delta_k < 2) {
    fail(Errc::invalid_input, "connectivity is only claimed when g - delta_k >= 2, got " + spec.to_string());
  }
  spec.max_dim = 1;
  const BasesGraph graph(obtain(ctx, spec));
  std::vector<std::pair<Vertex, Vertex>> pairs;
  if (ctx.job.from) {
    pairs.emplace_back(graph.id(parse_vertex(*ctx.job.from, spec)), graph.id(parse_vertex(*ctx.job.to, spec)));
  } else {
    for (Vertex i = 0; i < graph.vertex_count(); ++i) {
      for (Vertex j = i + 1; j < graph.vertex_count(); ++j) pairs.emplace_back(i, j);
    }
  }
  connect_checks(ctx, graph, pairs);
}

void cmd_fill(Context& ctx) {
  auto spec = ctx.job.spec;
  spec.validate();
  if (spec.g - spec.delta_k < 3) {
    fail(Errc::invalid_input, "loop filling is only claimed when g - delta_k >= 3, got " + spec.to_string());
  }
  spec.max_dim = 2;
  const BasesGraph graph(obtain(ctx, spec));
  fill_checks(ctx, graph, ctx.job.cycles, ctx.job.max_length);
}

void cmd_quotient(Context& ctx) {
  const auto& spec = ctx.job.spec;
  spec.validate();
  const auto level = ctx.job.level;
  if (spec.delta_k != 0 || spec.restrict_W) fail(Errc::invalid_input, "quotient acts on the full complex");
  if (level < 2 || level >= spec.L || spec.L % level != 0) {
    fail(Errc::invalid_input, "--level must be a proper divisor of L greater than 1");
  }
  const auto x = obtain(ctx, spec);

  Stopwatch tk;
  const auto kernel = sp::enumerate_congruence_kernel(spec.g, spec.modulus(), level);
  record(ctx, "kernel_order", std::nullopt, std::to_string(kernel.size()), "", true, "exhaustive enumeration",
         tk.ms());

  Stopwatch tr;
  const auto rot = sp::check_without_rotations(x, kernel);
  std::optional<Json> witness;
  if (!rot.without_rotations) {
    witness = Json{{"simplex", simplex_json(x, *rot.witness_simplex)},
                   {"element", kernel[*rot.witness_element].to_string()}};
  }
  record(ctx, "without_rotations", std::nullopt, rot.without_rotations ? "true" : "false", "true",
         rot.without_rotations, "exhaustive: every element against every simplex", tr.ms(), witness);
  if (!rot.without_rotations) return;

  Stopwatch tq;
  topology::GroupAction action;
  for (const auto& m : kernel) action.generators.push_back(sp::vertex_permutation(x, m));
  const auto q = topology::quotient_without_rotations(x.complex, action);
  BasesSpec target_spec{spec.g, level, 0, false, spec.max_dim};
  const auto target = bases::build_bases(target_spec);
  const auto fq = q.f_vector();
  const auto ft = target.complex.f_vector();
  auto show = [](const std::vector<std::size_t>& f) {
    std::string s;
    for (auto c : f) s += (s.empty() ? "" : ",") + std::to_string(c);
    return s;
  };
  record(ctx, "quotient_f_vector", std::nullopt, show(fq), show(ft), fq == ft,
         "direct build of Bases(g, level)", tq.ms());

  // Reduction mod level should carry the simplices of X onto those of the target.
  Stopwatch ti;
  std::set<std::vector<Vertex>> images;
  std::optional<Json> bad;
  for (int d = 0; d <= x.complex.dimension() && !bad; ++d) {
    for (const auto& s : x.complex.simplices(d)) {
      std::vector<Vertex> image;
      for (Vertex v : s.vertices()) {
        const auto r = linalg::canonical_lax(sp::reduce_vector(x.vertices[v].rep(), linalg::Modulus(level)));
        const auto found = target.find(r);
        if (!found) {
          bad = Json{{"simplex", simplex_json(x, s)}, {"reduced_vertex", r.to_string()}};
          break;
        }
        image.push_back(*found);
      }
      if (bad) break;
      std::sort(image.begin(), image.end());
      if (std::adjacent_find(image.begin(), image.end()) != image.end() ||
          !target.complex.contains(Simplex(image))) {
        bad = Json{{"simplex", simplex_json(x, s)}, {"note", "image is not a simplex of the target"}};
        break;
      }
      images.insert(image);
    }
  }
  const auto total = target.complex.total_count();
  const bool iso = !bad && images.size() == total && q.total_count() == total;
  if (!bad && !iso) bad = Json{{"images", images.size()}, {"target_simplices", total}, {"orbits", q.total_count()}};
  record(ctx, "reduction_isomorphism", std::nullopt, std::to_string(images.size()), std::to_string(total), iso,
         "reduction mod level onto a direct build", ti.ms(), bad);
}

void cmd_coinvariants(Context& ctx) {
  const auto& spec = ctx.job.spec;
  if (spec.L < 1) fail(Errc::invalid_input, "L must be positive");
  const heisenberg::KContext kc(spec.g, ctx.job.k);
  if (kc.k() == kc.g()) fail(Errc::unsupported_context, "k = g leaves no hyperbolic part in V''");
  Stopwatch t;
  const auto rep = heisenberg::compute_coinvariants(kc, spec.L);
  const double ms = t.ms();
  const Json detail{{"ambient_dimension", rep.ambient_dimension},
                    {"generators_used", rep.generators_used},
                    {"enlarged", rep.enlarged}};
  record(ctx, "coinvariant_dimension", std::nullopt, std::to_string(rep.dimension), "0", rep.dimension == 0,
         "exact rational rank (fraction-free elimination)", ms, std::make_optional(detail));

  Stopwatch td;
  const auto gens = rep.enlarged ? heisenberg::enlarged_generators(kc, spec.L)
                                 : heisenberg::default_generators(kc, spec.L);
  std::vector<std::vector<mpq_class>> rows(kc.dimension());
  for (const auto& a : gens) {
    for (std::size_t j = 0; j < kc.dimension(); ++j) {
      for (std::size_t r = 0; r < kc.dimension(); ++r) {
        mpz_class d = a(kc.ambient_coordinate(r), kc.ambient_coordinate(j)) - (r == j ? 1 : 0);
        rows[r].emplace_back(d);
      }
    }
  }
  const auto dense = kc.dimension() - oracle::rational_rank(rows);
  record(ctx, "coinvariant_dimension_dense", std::nullopt, std::to_string(dense), std::to_string(rep.dimension),
         dense == rep.dimension, "dense rational Gauss-Jordan", td.ms(), std::make_optional(detail));
  record(ctx, "generators_used", std::nullopt, std::to_string(rep.generators_used), "", true, "none", 0);
  record(ctx, "enlarged", std::nullopt, rep.enlarged ? "true" : "false", "", true, "none", 0);
}

}  // namespace laxbases::cli::detail
