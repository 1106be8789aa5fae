#include "laxbases/bases_complex.hpp"

#include <algorithm>

#include "laxbases/errors.hpp"

namespace laxbases::bases {

using topology::Simplex;
using topology::SimplicialComplex;
using topology::Vertex;

void BasesSpec::validate() const {
  if (g < 1) fail(Errc::invalid_input, "genus must be positive");
  if (L < 2) fail(Errc::invalid_input, "bases complexes need L >= 2");
  if (delta_k < 0 || delta_k > g) fail(Errc::invalid_input, "delta_k must lie in [0, g]");
  if (max_dim < 0) fail(Errc::invalid_input, "max_dim must be non-negative");
  (void)modulus();
}

std::string BasesSpec::to_string() const {
  return "Bases(g=" + std::to_string(g) + ", L=" + std::to_string(L) + ", k=" + std::to_string(delta_k) +
         (restrict_W ? ", W" : "") + ", max_dim=" + std::to_string(max_dim) + ")";
}

std::size_t RhoChoice::coordinate() const {
  if (index < 1) fail(Errc::invalid_input, "basis index must be positive");
  return kind == Kind::a ? linalg::coordinate_of_a(index) : linalg::coordinate_of_b(index);
}

std::string RhoChoice::to_string() const { return (kind == Kind::a ? "a_" : "b_") + std::to_string(index); }

RhoChoice canonical_rho(const BasesSpec& spec) {
  return RhoChoice{spec.restrict_W ? RhoChoice::Kind::a : RhoChoice::Kind::b, spec.g};
}

std::vector<ZLVector> constraint_vectors(const BasesSpec& spec) {
  std::vector<ZLVector> out;
  for (int i = 1; i <= spec.delta_k; ++i) out.push_back(ZLVector::basis_a(spec.g, spec.modulus(), i));
  return out;
}

bool in_W(const ZLVector& v) { return v[linalg::coordinate_of_b(v.genus())] == 0; }

namespace {

void require_shape(const BasesSpec& spec, const ZLVector& v) {
  if (v.genus() != spec.g || v.modulus() != spec.modulus()) {
    fail(Errc::dimension_mismatch, "vector " + v.to_string() + " does not belong to " + spec.to_string());
  }
}

bool summand_with_constraints(const BasesSpec& spec, std::span<const ZLVector> vs) {
  auto family = constraint_vectors(spec);
  family.insert(family.end(), vs.begin(), vs.end());
  if (family.size() > 2 * static_cast<std::size_t>(spec.g)) return false;
  return linalg::is_free_summand(family);
}

}  // namespace

bool is_vertex(const BasesSpec& spec, const ZLVector& v) {
  require_shape(spec, v);
  if (!linalg::is_primitive(v)) return false;
  if (spec.restrict_W && !in_W(v)) return false;
  for (const auto& a : constraint_vectors(spec)) {
    if (v == a || v == -a) return false;
    if (linalg::intersection_form(v, a) != 0) return false;
  }
  return summand_with_constraints(spec, std::span<const ZLVector>(&v, 1));
}

bool is_vertex(const BasesSpec& spec, const LaxVector& v) { return is_vertex(spec, v.rep()); }

bool is_simplex(const BasesSpec& spec, std::span<const LaxVector> vs) {
  if (vs.empty()) return false;
  std::vector<ZLVector> reps;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!is_vertex(spec, vs[i])) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (vs[i] == vs[j]) return false;
      if (linalg::intersection_form(vs[i].rep(), vs[j].rep()) != 0) return false;
    }
    reps.push_back(vs[i].rep());
  }
  return summand_with_constraints(spec, reps);
}

std::vector<LaxVector> enumerate_lax_vertices(const BasesSpec& spec) {
  spec.validate();
  const auto n = 2 * static_cast<std::size_t>(spec.g);
  const auto modulus = spec.modulus();
  std::vector<std::int64_t> coords(n, 0);
  std::vector<LaxVector> out;
  while (true) {
    ZLVector v(spec.g, modulus, coords);
    if (!v.is_zero() && !(-v < v) && is_vertex(spec, v)) out.push_back(linalg::canonical_lax(v));
    std::size_t i = n;
    while (i > 0 && coords[i - 1] == spec.L - 1) coords[--i] = 0;
    if (i == 0) break;
    ++coords[i - 1];
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Vertex> BasesComplex::find(const LaxVector& v) const {
  if (auto it = index_.find(v); it != index_.end()) return it->second;
  return std::nullopt;
}

std::vector<LaxVector> BasesComplex::lax_vertices_of(const Simplex& s) const {
  std::vector<LaxVector> out;
  for (Vertex v : s.vertices()) out.push_back(vertices.at(v));
  return out;
}

BasesComplex assemble_bases(const BasesSpec& spec, std::vector<LaxVector> vertices, SimplicialComplex complex) {
  BasesComplex out;
  out.spec = spec;
  out.vertices = std::move(vertices);
  out.complex = std::move(complex);
  for (std::size_t i = 0; i < out.vertices.size(); ++i) {
    if (!out.index_.emplace(out.vertices[i], static_cast<Vertex>(i)).second) {
      fail(Errc::invalid_input, "duplicate vertex " + out.vertices[i].to_string());
    }
  }
  return out;
}

BasesComplex build_bases(const BasesSpec& spec) {
  spec.validate();
  auto verts = enumerate_lax_vertices(spec);
  const auto n = verts.size();

  std::vector<std::vector<Vertex>> above(n);  // neighbours with larger index
  std::vector<std::vector<Simplex>> layers(1);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    layers[0].push_back(Simplex{static_cast<Vertex>(i)});
    labels.push_back(verts[i].to_string());
  }

  if (spec.max_dim >= 1) {
    layers.emplace_back();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (linalg::intersection_form(verts[i].rep(), verts[j].rep()) != 0) continue;
        const ZLVector pair[] = {verts[i].rep(), verts[j].rep()};
        if (!summand_with_constraints(spec, pair)) continue;
        above[i].push_back(static_cast<Vertex>(j));
        layers[1].push_back(Simplex{static_cast<Vertex>(i), static_cast<Vertex>(j)});
      }
    }
  }

  for (int d = 2; d <= spec.max_dim && !layers.back().empty(); ++d) {
    std::vector<Simplex> next;
    for (const auto& s : layers.back()) {
      // Extend by a vertex above the largest one that is adjacent to every member.
      for (Vertex w : above[s.vertices().back()]) {
        bool clique = true;
        for (std::size_t t = 0; t + 1 < s.size() && clique; ++t) {
          clique = std::binary_search(above[s[t]].begin(), above[s[t]].end(), w);
        }
        if (!clique) continue;
        std::vector<ZLVector> family;
        for (Vertex v : s.vertices()) family.push_back(verts[v].rep());
        family.push_back(verts[w].rep());
        if (!summand_with_constraints(spec, family)) continue;
        std::vector<Vertex> grown(s.vertices().begin(), s.vertices().end());
        grown.push_back(w);
        next.emplace_back(std::move(grown));
      }
    }
    layers.push_back(std::move(next));
  }
  while (layers.size() > 1 && layers.back().empty()) layers.pop_back();

  const int top = static_cast<int>(layers.size()) - 1;
  const int complete = top < spec.max_dim ? SimplicialComplex::kComplete : spec.max_dim;
  std::vector<Simplex> all;
  for (auto& layer : layers) all.insert(all.end(), layer.begin(), layer.end());
  if (n == 0) all.clear();
  auto complex = SimplicialComplex::from_simplices(std::move(all), std::move(labels), complete);
  return assemble_bases(spec, std::move(verts), std::move(complex));
}

std::int64_t rho_rank(const ZLVector& v, const RhoChoice& rho) {
  const auto L = v.modulus().value();
  if (L < 2) fail(Errc::invalid_input, "rho-rank needs L >= 2");
  if (rho.index > v.genus()) fail(Errc::invalid_input, "rho " + rho.to_string() + " exceeds the genus");
  const auto c = v[rho.coordinate()];
  return std::min(c, (L - c) % L);
}

std::int64_t rho_rank(const LaxVector& v, const RhoChoice& rho) { return rho_rank(v.rep(), rho); }

ZLVector normalized_representative(const LaxVector& v, const RhoChoice& rho) {
  const auto r = rho_rank(v, rho);
  if (v.rep()[rho.coordinate()] == r) return v.rep();
  return -v.rep();
}

std::int64_t rank_reduction_coefficient(const ZLVector& v_x, const ZLVector& v, const RhoChoice& rho,
                                        bool keep_reduced) {
  linalg::require_same_shape(v_x, v);
  const auto R = rho_rank(v, rho);
  if (R == 0) fail(Errc::invalid_input, "pivot has rho-rank 0, nothing to divide by");
  const auto L = v.modulus().value();
  if (v[rho.coordinate()] != R) {
    fail(Errc::invalid_input, "pivot " + v.to_string() + " is not normalized: its " + rho.to_string() +
                                  "-coordinate must equal its rank " + std::to_string(R));
  }
  if (keep_reduced && rho_rank(v_x, rho) < R) return 0;
  const auto quotient = v_x[rho.coordinate()] / R;
  return (L - quotient % L) % L;
}

namespace {

std::string describe(std::span<const LaxVector> vs) {
  std::string out = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? ", " : "") + vs[i].to_string();
  return out + "}";
}

}  // namespace

LaxVector reduce_vertex(const BasesSpec& spec, std::span<const LaxVector> context, const LaxVector& v_x,
                        const LaxVector& pivot, const RhoChoice& rho, bool keep_reduced) {
  spec.validate();
  if (std::find(context.begin(), context.end(), pivot) == context.end()) {
    fail(Errc::invalid_input, "pivot " + pivot.to_string() + " is not in the context");
  }
  std::vector<LaxVector> before(context.begin(), context.end());
  before.push_back(v_x);
  if (!is_simplex(spec, before)) fail(Errc::invalid_input, describe(before) + " is not a simplex of " + spec.to_string());
  const auto R = rho_rank(pivot, rho);
  if (R == 0) fail(Errc::invalid_input, "pivot " + pivot.to_string() + " has rho-rank 0");

  const auto v = normalized_representative(pivot, rho);
  const auto x = normalized_representative(v_x, rho);
  const auto q = rank_reduction_coefficient(x, v, rho, keep_reduced);
  const auto result = linalg::canonical_lax(x + v.scaled(q));

  std::vector<LaxVector> after(context.begin(), context.end());
  after.push_back(result);
  if (!is_simplex(spec, after)) {
    fail(Errc::internal_invariant, "reduction of " + v_x.to_string() + " by " + pivot.to_string() +
                                       " left the simplex predicate: " + describe(after));
  }
  if (rho_rank(result, rho) >= R) {
    fail(Errc::internal_invariant, "reduction of " + v_x.to_string() + " did not lower its rank below " +
                                       std::to_string(R));
  }
  return result;
}

}  // namespace laxbases::bases
