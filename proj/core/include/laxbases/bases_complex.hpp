#pragma once

// The complex of lax isotropic bases over Z_L, its link and W-restricted
// variants, and the rho-rank used to drive the connectivity induction.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "laxbases/simplicial.hpp"
#include "laxbases/zl_linalg.hpp"

namespace laxbases::bases {

using linalg::LaxVector;
using linalg::ZLVector;

struct BasesSpec {
  int g = 1;
  std::int64_t L = 2;
  int delta_k = 0;          // links of {+-a_1, ..., +-a_k}
  bool restrict_W = false;  // W = <a_1, b_1, ..., a_{g-1}, b_{g-1}, a_g>
  int max_dim = 2;

  // Throws invalid_input unless g >= 1, L >= 2, 0 <= delta_k <= g, max_dim >= 0.
  void validate() const;
  linalg::Modulus modulus() const { return linalg::Modulus(L); }
  std::string to_string() const;

  friend bool operator==(const BasesSpec&, const BasesSpec&) = default;
};

struct RhoChoice {
  enum class Kind { a, b };
  Kind kind = Kind::b;
  int index = 1;  // 1-based basis index

  std::size_t coordinate() const;
  std::string to_string() const;
  friend bool operator==(const RhoChoice&, const RhoChoice&) = default;
};

// a_g for the W-restricted complex, b_g otherwise.
RhoChoice canonical_rho(const BasesSpec& spec);

// a_1, ..., a_k.
std::vector<ZLVector> constraint_vectors(const BasesSpec& spec);

// b_g-coordinate zero.
bool in_W(const ZLVector& v);

bool is_vertex(const BasesSpec& spec, const ZLVector& v);
bool is_vertex(const BasesSpec& spec, const LaxVector& v);

// Pairwise distinct vertices, pairwise isotropic, and together with the
// constraint vectors a free summand.
bool is_simplex(const BasesSpec& spec, std::span<const LaxVector> vs);

// All vertices in lexicographic order of canonical representatives.
std::vector<LaxVector> enumerate_lax_vertices(const BasesSpec& spec);

struct BasesComplex {
  BasesSpec spec;
  std::vector<LaxVector> vertices;  // vertex id i is vertices[i]
  topology::SimplicialComplex complex;

  std::optional<topology::Vertex> find(const LaxVector& v) const;
  std::vector<LaxVector> lax_vertices_of(const topology::Simplex& s) const;

 private:
  friend BasesComplex build_bases(const BasesSpec& spec);
  friend BasesComplex assemble_bases(const BasesSpec&, std::vector<LaxVector>, topology::SimplicialComplex);
  std::unordered_map<LaxVector, topology::Vertex, linalg::LaxVectorHash> index_;
};

// Skeleton through spec.max_dim, by clique extension with a summand test at
// every step. complete_through is max_dim unless the complex ends earlier.
BasesComplex build_bases(const BasesSpec& spec);

// Wraps an externally supplied complex (a cache load); re-indexes vertices.
BasesComplex assemble_bases(const BasesSpec& spec, std::vector<LaxVector> vertices,
                            topology::SimplicialComplex complex);

std::int64_t rho_rank(const ZLVector& v, const RhoChoice& rho);
std::int64_t rho_rank(const LaxVector& v, const RhoChoice& rho);

// The representative of +-v whose rho-coordinate equals its rho-rank. When
// both qualify (coordinate 0 or L/2) the canonical representative is used.
ZLVector normalized_representative(const LaxVector& v, const RhoChoice& rho);

// q with rank(+-(v_x + q v)) < R, where R is v's rho-coordinate, which must be
// its rho-rank and positive. q is minus the Euclidean quotient of v_x's
// rho-coordinate by R. With keep_reduced, q = 0 when rank(+-v_x) < R already.
std::int64_t rank_reduction_coefficient(const ZLVector& v_x, const ZLVector& v, const RhoChoice& rho,
                                        bool keep_reduced = false);

// +-(v_x + q pivot), re-verified to form a simplex with the context and to
// have rank below the pivot's whenever v_x's rank is at least the pivot's.
LaxVector reduce_vertex(const BasesSpec& spec, std::span<const LaxVector> context, const LaxVector& v_x,
                        const LaxVector& pivot, const RhoChoice& rho, bool keep_reduced = false);

}  // namespace laxbases::bases
