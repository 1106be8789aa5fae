#include "laxbases/connectivity.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "laxbases/errors.hpp"

namespace laxbases::bases {

using topology::Simplex;
using topology::SimplicialComplex;
using topology::Vertex;

BasesGraph::BasesGraph(BasesComplex bases) : bases_(std::move(bases)) {
  const auto n = bases_.vertices.size();
  if (n > 0 && bases_.complex.complete_through() < 1) {
    fail(Errc::incomplete_skeleton, "constructive algorithms need at least the 1-skeleton");
  }
  neighbors_.resize(n);
  for (const auto& e : bases_.complex.simplices(1)) {
    neighbors_[e[0]].push_back(e[1]);
    neighbors_[e[1]].push_back(e[0]);
  }
  for (auto& list : neighbors_) std::sort(list.begin(), list.end());
  for (const auto& v : bases_.vertices) in_w_.push_back(bases::in_W(v.rep()));
}

Vertex BasesGraph::id(const LaxVector& v) const {
  if (auto found = bases_.find(v)) return *found;
  fail(Errc::invalid_input, v.to_string() + " is not a vertex of " + spec().to_string());
}

bool BasesGraph::adjacent(Vertex u, Vertex v) const {
  const auto& list = neighbors_.at(u);
  return std::binary_search(list.begin(), list.end(), v);
}

bool BasesGraph::spans_simplex(std::vector<Vertex> vs, bool w_only) const {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  if (vs.empty()) return false;
  for (Vertex v : vs) {
    if (v >= vertex_count() || (w_only && !in_w_[v])) return false;
  }
  const auto& x = bases_.complex;
  const int dim = static_cast<int>(vs.size()) - 1;
  if (dim <= x.complete_through()) return x.contains(Simplex(vs));
  std::vector<LaxVector> lax;
  for (Vertex v : vs) lax.push_back(bases_.vertices[v]);
  return is_simplex(spec(), lax);
}

namespace {

enum class Phase { full, w };

RhoChoice rho_for(const BasesSpec& spec, Phase phase) {
  return RhoChoice{phase == Phase::w ? RhoChoice::Kind::a : RhoChoice::Kind::b, spec.g};
}

BasesSpec spec_for(BasesSpec spec, Phase phase) {
  spec.restrict_W = phase == Phase::w;
  return spec;
}

LaxVector lax_a_g(const BasesSpec& spec) {
  return linalg::canonical_lax(ZLVector::basis_a(spec.g, spec.modulus(), spec.g));
}

[[noreturn]] void out_of_budget(const char* what, std::size_t budget) {
  throw BudgetExceeded(std::string(what) + " exceeded its budget of " + std::to_string(budget) + " reduction steps");
}

// Reduces every candidate by the pivot and keeps the one of least rank, ties
// broken by vertex id.
std::optional<Vertex> best_reduction(const BasesGraph& graph, Phase phase, std::span<const Vertex> candidates,
                                     std::span<const LaxVector> context, const LaxVector& pivot) {
  const auto spec = spec_for(graph.spec(), phase);
  const auto rho = rho_for(graph.spec(), phase);
  std::optional<std::pair<std::int64_t, Vertex>> best;
  for (Vertex z : candidates) {
    if (phase == Phase::w && !graph.in_W(z)) continue;
    const auto reduced = graph.id(reduce_vertex(spec, context, graph.vertex(z), pivot, rho));
    const std::pair<std::int64_t, Vertex> key{rho_rank(graph.vertex(reduced), rho), reduced};
    if (!best || key < *best) best = key;
  }
  if (!best) return std::nullopt;
  return best->second;
}

}  // namespace

ConnectResult connect_vertices(const BasesGraph& graph, const LaxVector& u, const LaxVector& w,
                               std::optional<std::size_t> budget) {
  const auto& spec = graph.spec();
  if (spec.g - spec.delta_k < 2) {
    fail(Errc::invalid_input, "connectivity is only claimed when g - delta_k >= 2, got " + spec.to_string());
  }
  const std::size_t limit = budget.value_or(10 * 2 * static_cast<std::size_t>(spec.L));
  ConnectResult result;
  const Vertex start = graph.id(u);
  const Vertex end = graph.id(w);
  if (start == end) {
    result.path = {u};
    return result;
  }

  auto descend = [&](Vertex x) {
    std::vector<Vertex> chain{x};
    Phase phase = spec.restrict_W ? Phase::w : Phase::full;
    while (true) {
      const auto rho = rho_for(spec, phase);
      const auto R = rho_rank(graph.vertex(x), rho);
      if (R == 0) {
        if (phase == Phase::w) break;
        phase = Phase::w;
        result.entered_w_phase = true;
        continue;
      }
      if (++result.steps > limit) out_of_budget("connect_vertices", limit);
      const LaxVector pivot = graph.vertex(x);
      const auto next = best_reduction(graph, phase, graph.neighbors(x), std::span<const LaxVector>(&pivot, 1), pivot);
      if (!next) fail(Errc::certification_failure, "vertex " + pivot.to_string() + " has an empty link");
      x = *next;
      chain.push_back(x);
    }
    return chain;
  };

  auto left = descend(start);
  auto right = descend(end);
  std::vector<Vertex> ids = left;
  if (left.back() != right.back()) {
    const auto hub = graph.id(lax_a_g(spec));
    ids.push_back(hub);
    ids.insert(ids.end(), right.rbegin(), right.rend());
  } else {
    ids.insert(ids.end(), right.rbegin() + 1, right.rend());
  }
  if (result.entered_w_phase || spec.restrict_W) result.k_at_maximum = spec.delta_k == spec.g - 2;

  for (Vertex v : ids) result.path.push_back(graph.vertex(v));
  if (!verify_path(graph, result.path)) {
    fail(Errc::certification_failure, "constructed path from " + u.to_string() + " to " + w.to_string() +
                                          " contains a non-edge");
  }
  return result;
}

ConnectResult connect_vertices(const LaxVector& u, const LaxVector& w, const BasesSpec& spec) {
  auto s = spec;
  s.max_dim = std::max(s.max_dim, 1);
  const BasesGraph graph(build_bases(s));
  return connect_vertices(graph, u, w);
}

bool verify_path(const BasesGraph& graph, const std::vector<LaxVector>& path) {
  if (path.empty()) return false;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const auto a = graph.bases().find(path[i]);
    const auto b = graph.bases().find(path[i + 1]);
    if (!a || !b) return false;
    if (*a != *b && !graph.spans_simplex({*a, *b})) return false;
    // Independent re-check against the defining predicate.
    if (*a != *b) {
      const LaxVector edge[] = {path[i], path[i + 1]};
      if (!is_simplex(graph.spec(), edge)) return false;
    }
  }
  return graph.bases().find(path.back()).has_value();
}

SphereMap SphereMap::from_cycle(std::vector<LaxVector> loop) {
  const auto m = loop.size();
  if (m < 3) fail(Errc::invalid_input, "a combinatorial circle needs at least 3 vertices");
  std::vector<std::vector<Vertex>> edges;
  for (std::size_t i = 0; i < m; ++i) {
    edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % m)});
  }
  return SphereMap{SimplicialComplex::from_facets(edges), std::move(loop)};
}

std::vector<LaxVector> SphereMap::cyclic_word() const {
  if (!topology::is_combinatorial_sphere(domain, 1) || domain.empty()) {
    fail(Errc::invalid_input, "loop domain is not a combinatorial circle");
  }
  const auto verts = domain.vertices();
  std::vector<std::vector<Vertex>> adj(verts.back() + 1);
  for (const auto& e : domain.simplices(1)) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  std::vector<LaxVector> word;
  Vertex prev = verts.front();
  Vertex cur = verts.front();
  Vertex next = std::min(adj[cur][0], adj[cur][1]);
  do {
    word.push_back(assignment.at(cur));
    prev = cur;
    cur = next;
    next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
  } while (cur != verts.front());
  return word;
}

bool is_valid_sphere_map(const BasesGraph& graph, const SphereMap& map) {
  if (map.domain.empty() || !topology::is_combinatorial_sphere(map.domain, 1)) return false;
  if (map.assignment.size() <= map.domain.vertices().back()) return false;
  for (int d = 0; d <= map.domain.dimension(); ++d) {
    for (const auto& s : map.domain.simplices(d)) {
      std::vector<Vertex> image;
      for (Vertex v : s.vertices()) {
        const auto id = graph.bases().find(map.assignment[v]);
        if (!id) return false;
        image.push_back(*id);
      }
      if (!graph.spans_simplex(image)) return false;
    }
  }
  return true;
}

namespace {

std::size_t before(std::size_t i, std::size_t n) { return (i + n - 1) % n; }
std::size_t after(std::size_t i, std::size_t n) { return (i + 1) % n; }

std::vector<LaxVector> as_set(std::vector<LaxVector> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

// The simplices a move sweeps, derived from the word before the move.
std::optional<std::vector<std::vector<LaxVector>>> expected_certificate(const std::vector<LaxVector>& loop,
                                                                         const LoopMove& move) {
  const auto n = loop.size();
  if (n == 0) return std::nullopt;
  std::vector<std::vector<LaxVector>> out;
  switch (move.kind) {
    case MoveKind::insert:
      if (move.position >= n || !move.vertex) return std::nullopt;
      out.push_back(as_set({loop[move.position], *move.vertex, loop[after(move.position, n)]}));
      break;
    case MoveKind::remove:
      if (move.position >= n || n < 2) return std::nullopt;
      out.push_back(as_set({loop[before(move.position, n)], loop[move.position], loop[after(move.position, n)]}));
      break;
    case MoveKind::replace:
      if (move.position >= n || !move.vertex) return std::nullopt;
      out.push_back(as_set({loop[before(move.position, n)], loop[move.position], *move.vertex}));
      out.push_back(as_set({loop[move.position], *move.vertex, loop[after(move.position, n)]}));
      break;
    case MoveKind::collapse:
      out.push_back(as_set(loop));
      break;
  }
  return out;
}

}  // namespace

std::vector<LaxVector> apply_move(const std::vector<LaxVector>& loop, const LoopMove& move) {
  auto out = loop;
  switch (move.kind) {
    case MoveKind::insert:
      out.insert(out.begin() + static_cast<std::ptrdiff_t>(move.position) + 1, *move.vertex);
      break;
    case MoveKind::remove:
      out.erase(out.begin() + static_cast<std::ptrdiff_t>(move.position));
      break;
    case MoveKind::replace:
      out[move.position] = *move.vertex;
      break;
    case MoveKind::collapse:
      out = {loop.front()};
      break;
  }
  return out;
}

bool certify_move(const BasesGraph& graph, const std::vector<LaxVector>& loop, const LoopMove& move) {
  const auto expected = expected_certificate(loop, move);
  if (!expected) return false;
  std::vector<std::vector<LaxVector>> given;
  for (const auto& s : move.certificate) given.push_back(as_set(s));
  if (given != *expected) return false;
  for (const auto& s : given) {
    std::vector<Vertex> ids;
    for (const auto& v : s) {
      const auto id = graph.bases().find(v);
      if (!id) return false;
      ids.push_back(*id);
    }
    if (!graph.spans_simplex(ids, move.w_phase)) return false;
  }
  return true;
}

std::optional<std::vector<LaxVector>> replay_moves(const BasesGraph& graph, std::vector<LaxVector> loop,
                                                   const std::vector<LoopMove>& moves) {
  for (const auto& move : moves) {
    if (!certify_move(graph, loop, move)) return std::nullopt;
    loop = apply_move(loop, move);
  }
  return loop;
}

namespace {

class LoopFiller {
 public:
  LoopFiller(const BasesGraph& graph, std::vector<LaxVector> word, std::size_t budget)
      : graph_(graph), spec_(graph.spec()), budget_(budget) {
    for (const auto& v : word) word_.push_back(graph.id(v));
    phase_ = spec_.restrict_W ? Phase::w : Phase::full;
  }

  FillResult run() {
    // A constant loop is already filled.
    if (std::all_of(word_.begin(), word_.end(), [&](Vertex v) { return v == word_.front(); })) word_.resize(1);
    while (true) {
      deduplicate();
      if (word_.size() == 1) break;
      if (try_collapse()) break;
      const auto rho = rho_for(spec_, phase_);
      std::int64_t R = 0;
      for (Vertex v : word_) R = std::max(R, rank(v, rho));
      if (R == 0) {
        if (phase_ == Phase::full) {
          phase_ = Phase::w;
          result_.entered_w_phase = true;
          continue;
        }
        cone_to_a_g();
        continue;
      }
      if (++result_.steps > budget_) out_of_budget("fill_loop", budget_);
      if (!reduce_top_edge(R, rho)) reduce_top_vertex(R, rho);
    }
    if (result_.entered_w_phase || spec_.restrict_W) result_.k_at_maximum = spec_.delta_k == spec_.g - 3;
    for (Vertex v : word_) result_.final_loop.push_back(graph_.vertex(v));
    return std::move(result_);
  }

 private:
  std::int64_t rank(Vertex v, const RhoChoice& rho) const { return rho_rank(graph_.vertex(v), rho); }

  std::vector<LaxVector> lax_word() const {
    std::vector<LaxVector> out;
    for (Vertex v : word_) out.push_back(graph_.vertex(v));
    return out;
  }

  void emit(MoveKind kind, std::size_t position, std::optional<Vertex> vertex = std::nullopt) {
    LoopMove move{kind, position, std::nullopt, {}, phase_ == Phase::w};
    if (vertex) move.vertex = graph_.vertex(*vertex);
    const auto before_move = lax_word();
    move.certificate = *expected_certificate(before_move, move);
    if (!certify_move(graph_, before_move, move)) {
      fail(Errc::certification_failure, "loop move at position " + std::to_string(position) + " is not certified");
    }
    switch (kind) {
      case MoveKind::insert:
        word_.insert(word_.begin() + static_cast<std::ptrdiff_t>(position) + 1, *vertex);
        break;
      case MoveKind::remove:
        word_.erase(word_.begin() + static_cast<std::ptrdiff_t>(position));
        break;
      case MoveKind::replace:
        word_[position] = *vertex;
        break;
      case MoveKind::collapse:
        word_ = {word_.front()};
        break;
    }
    result_.moves.push_back(std::move(move));
  }

  void deduplicate() {
    bool changed = true;
    while (changed && word_.size() > 1) {
      changed = false;
      for (std::size_t i = 0; i < word_.size() && word_.size() > 1; ++i) {
        if (word_[i] == word_[after(i, word_.size())]) {
          emit(MoveKind::remove, after(i, word_.size()));
          changed = true;
          break;
        }
      }
    }
  }

  bool try_collapse() {
    std::set<Vertex> support(word_.begin(), word_.end());
    if (support.size() > static_cast<std::size_t>(spec_.g)) return false;
    if (!graph_.spans_simplex({support.begin(), support.end()}, phase_ == Phase::w)) return false;
    emit(MoveKind::collapse, 0);
    return true;
  }

  void cone_to_a_g() {
    const auto hub = graph_.id(lax_a_g(spec_));
    for (std::size_t i = 0; i < word_.size(); ++i) {
      if (word_[i] != hub) emit(MoveKind::replace, i, hub);
    }
  }

  // An edge of the loop with both ends of rank R is coned off through a reduced
  // common neighbour.
  bool reduce_top_edge(std::int64_t R, const RhoChoice& rho) {
    const auto n = word_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vertex a = word_[i];
      const Vertex b = word_[after(i, n)];
      if (a == b || rank(a, rho) != R || rank(b, rho) != R) continue;
      std::vector<Vertex> common;
      for (Vertex z : graph_.neighbors(a)) {
        if (z != b && graph_.adjacent(b, z) && graph_.spans_simplex({a, b, z}, phase_ == Phase::w)) common.push_back(z);
      }
      const LaxVector context[] = {graph_.vertex(a), graph_.vertex(b)};
      const auto z = best_reduction(graph_, phase_, common, context, graph_.vertex(a));
      if (!z) fail(Errc::certification_failure, "edge " + context[0].to_string() + " - " + context[1].to_string() +
                                                    " has an empty link");
      emit(MoveKind::insert, i, *z);
      return true;
    }
    return false;
  }

  // A vertex of rank R whose loop neighbours have smaller rank is replaced by a
  // reduced path between those neighbours inside its link.
  void reduce_top_vertex(std::int64_t R, const RhoChoice& rho) {
    const auto n = word_.size();
    std::size_t idx = 0;
    while (rank(word_[idx], rho) != R) ++idx;
    const Vertex a = word_[idx];
    const Vertex p = word_[before(idx, n)];
    const Vertex q = word_[after(idx, n)];
    if (p == q) {
      emit(MoveKind::remove, idx);
      return;
    }
    const auto path = link_path(a, p, q);
    const auto bspec = spec_for(spec_, phase_);
    const LaxVector pivot = graph_.vertex(a);
    for (std::size_t j = 1; j + 1 < path.size(); ++j) {
      const auto reduced = graph_.id(reduce_vertex(bspec, std::span<const LaxVector>(&pivot, 1),
                                                   graph_.vertex(path[j]), pivot, rho));
      const auto pos = before(idx, word_.size());
      emit(MoveKind::insert, pos, reduced);
      if (pos < idx) ++idx;
    }
    emit(MoveKind::remove, idx);
  }

  // Shortest path from p to q in the link of a, within the current phase.
  std::vector<Vertex> link_path(Vertex a, Vertex p, Vertex q) const {
    const bool w_only = phase_ == Phase::w;
    std::unordered_map<Vertex, Vertex> parent{{p, p}};
    std::deque<Vertex> frontier{p};
    while (!frontier.empty() && !parent.contains(q)) {
      const Vertex x = frontier.front();
      frontier.pop_front();
      for (Vertex y : graph_.neighbors(x)) {
        if (parent.contains(y) || y == a || !graph_.adjacent(a, y)) continue;
        if (w_only && !graph_.in_W(y)) continue;
        if (!graph_.spans_simplex({a, x, y}, w_only)) continue;
        parent.emplace(y, x);
        frontier.push_back(y);
      }
    }
    if (!parent.contains(q)) {
      fail(Errc::certification_failure, "no path between " + graph_.vertex(p).to_string() + " and " +
                                            graph_.vertex(q).to_string() + " in the link of " +
                                            graph_.vertex(a).to_string());
    }
    std::vector<Vertex> path{q};
    while (path.back() != p) path.push_back(parent.at(path.back()));
    std::reverse(path.begin(), path.end());
    return path;
  }

  const BasesGraph& graph_;
  BasesSpec spec_;
  std::size_t budget_;
  Phase phase_;
  std::vector<Vertex> word_;
  FillResult result_;
};

}  // namespace

FillResult fill_loop(const BasesGraph& graph, const SphereMap& loop, std::optional<std::size_t> budget) {
  const auto& spec = graph.spec();
  if (spec.g - spec.delta_k < 3) {
    fail(Errc::invalid_input, "loop filling is only claimed when g - delta_k >= 3, got " + spec.to_string());
  }
  if (graph.vertex_count() > 0 && graph.bases().complex.complete_through() < 2) {
    fail(Errc::incomplete_skeleton, "loop filling needs the 2-skeleton");
  }
  if (!is_valid_sphere_map(graph, loop)) fail(Errc::invalid_input, "loop is not a simplicial map from a circle");
  const auto word = loop.cyclic_word();
  const std::size_t limit = budget.value_or(10 * word.size() * static_cast<std::size_t>(spec.L));
  return LoopFiller(graph, word, limit).run();
}

std::vector<LaxVector> random_cycle(const BasesGraph& graph, std::size_t length, std::mt19937_64& rng) {
  if (length < 3) fail(Errc::invalid_input, "cycles need length at least 3");
  if (graph.vertex_count() == 0) fail(Errc::invalid_input, "complex has no vertices");
  auto pick = [&](std::span<const Vertex> from) {
    return from[std::uniform_int_distribution<std::size_t>(0, from.size() - 1)(rng)];
  };
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<Vertex> walk{static_cast<Vertex>(
        std::uniform_int_distribution<std::size_t>(0, graph.vertex_count() - 1)(rng))};
    bool stuck = false;
    while (walk.size() + 1 < length) {
      const auto next = graph.neighbors(walk.back());
      if (next.empty()) {
        stuck = true;
        break;
      }
      walk.push_back(pick(next));
    }
    if (stuck) continue;
    std::vector<Vertex> closers;
    for (Vertex z : graph.neighbors(walk.back())) {
      if (graph.adjacent(walk.front(), z)) closers.push_back(z);
    }
    if (closers.empty()) continue;
    walk.push_back(pick(closers));
    std::vector<LaxVector> out;
    for (Vertex v : walk) out.push_back(graph.vertex(v));
    return out;
  }
  fail(Errc::certification_failure, "could not close a random walk into a cycle");
}

}  // namespace laxbases::bases
