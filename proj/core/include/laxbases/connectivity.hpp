#pragma once

// Constructive connectivity certificates in Bases^{Delta^k}(g, L): paths
// between vertices (n = 0) and null-homotopies of simplicial loops (n = 1),
// both driven by rho-rank reduction.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "laxbases/bases_complex.hpp"

namespace laxbases::bases {

// A built complex with its 1-skeleton adjacency and W membership, shared by
// the constructive algorithms.
class BasesGraph {
 public:
  explicit BasesGraph(BasesComplex bases);

  const BasesComplex& bases() const noexcept { return bases_; }
  const BasesSpec& spec() const noexcept { return bases_.spec; }
  std::size_t vertex_count() const noexcept { return bases_.vertices.size(); }
  const LaxVector& vertex(topology::Vertex v) const { return bases_.vertices.at(v); }
  topology::Vertex id(const LaxVector& v) const;  // throws invalid_input if absent

  std::span<const topology::Vertex> neighbors(topology::Vertex v) const { return neighbors_.at(v); }
  bool adjacent(topology::Vertex u, topology::Vertex v) const;
  bool in_W(topology::Vertex v) const { return in_w_.at(v); }

  // Whether the vertex set (repetitions ignored) is a simplex of the built
  // complex, restricted to W when w_only is set.
  bool spans_simplex(std::vector<topology::Vertex> vs, bool w_only = false) const;

 private:
  BasesComplex bases_;
  std::vector<std::vector<topology::Vertex>> neighbors_;
  std::vector<bool> in_w_;
};

struct ConnectResult {
  std::vector<LaxVector> path;  // consecutive entries span edges
  std::size_t steps = 0;        // rank reductions performed
  bool entered_w_phase = false;
  bool k_at_maximum = false;    // W phase entered with delta_k = g - 2
};

// Needs g - delta_k >= 2 and the 1-skeleton. The budget defaults to
// 10 * 2 * L reduction steps; exceeding it raises certification_failure.
ConnectResult connect_vertices(const BasesGraph& graph, const LaxVector& u, const LaxVector& w,
                               std::optional<std::size_t> budget = std::nullopt);
ConnectResult connect_vertices(const LaxVector& u, const LaxVector& w, const BasesSpec& spec);

// Every consecutive pair of the path is equal or an edge of the complex.
bool verify_path(const BasesGraph& graph, const std::vector<LaxVector>& path);

// A simplicial map from a combinatorial 1-sphere to the complex.
struct SphereMap {
  topology::SimplicialComplex domain;
  std::vector<LaxVector> assignment;  // indexed by domain vertex

  // The cycle 0 - 1 - ... - (m-1) - 0 with m = loop.size() >= 3.
  static SphereMap from_cycle(std::vector<LaxVector> loop);
  // Vertex images read along the cycle starting at the least domain vertex.
  std::vector<LaxVector> cyclic_word() const;
};

// Checks the domain is a 1-sphere and every simplex maps onto a simplex.
bool is_valid_sphere_map(const BasesGraph& graph, const SphereMap& map);

enum class MoveKind {
  insert,    // new vertex between position and position + 1
  remove,    // drop the vertex at position
  replace,   // substitute the vertex at position
  collapse,  // the loop lies in one simplex; contract to its first vertex
};

struct LoopMove {
  MoveKind kind;
  std::size_t position = 0;
  std::optional<LaxVector> vertex;  // inserted or substituted vertex
  std::vector<std::vector<LaxVector>> certificate;  // simplices swept by the move
  bool w_phase = false;  // certificate simplices must lie in W
};

// Applies a move to a cyclic word without checking it.
std::vector<LaxVector> apply_move(const std::vector<LaxVector>& loop, const LoopMove& move);

// Recomputes the simplices the move must sweep from the word before the move
// and checks they match the certificate and are simplices of the complex.
bool certify_move(const BasesGraph& graph, const std::vector<LaxVector>& loop, const LoopMove& move);

struct FillResult {
  std::vector<LoopMove> moves;
  std::vector<LaxVector> final_loop;
  std::size_t steps = 0;  // rank-reduction rounds
  bool entered_w_phase = false;
  bool k_at_maximum = false;  // W phase entered with delta_k = g - 3
};

// Needs g - delta_k >= 3 and the 2-skeleton. The budget defaults to
// 10 * (domain vertices) * L rounds.
FillResult fill_loop(const BasesGraph& graph, const SphereMap& loop, std::optional<std::size_t> budget = std::nullopt);

// Replays a move log, certifying every move; returns the final word or
// nullopt at the first move that fails.
std::optional<std::vector<LaxVector>> replay_moves(const BasesGraph& graph, std::vector<LaxVector> loop,
                                                   const std::vector<LoopMove>& moves);

// Random closed walks of the given length on the 1-skeleton: a walk
// x_0 .. x_{m-2} closed by a common neighbour of x_{m-2} and x_0.
std::vector<LaxVector> random_cycle(const BasesGraph& graph, std::size_t length, std::mt19937_64& rng);

}  // namespace laxbases::bases
