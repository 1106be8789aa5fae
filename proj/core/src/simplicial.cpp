#include "laxbases/simplicial.hpp"

#include <algorithm>
#include <map>

#include "laxbases/union_find.hpp"

namespace laxbases::topology {

Simplex::Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) fail(Errc::invalid_input, "simplices are nonempty vertex sets");
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    fail(Errc::invalid_input, "simplex lists a vertex twice");
  }
}

bool Simplex::contains(Vertex v) const noexcept {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Simplex::intersects(const Simplex& other) const noexcept {
  auto i = vertices_.begin();
  auto j = other.vertices_.begin();
  while (i != vertices_.end() && j != other.vertices_.end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

std::vector<Simplex> Simplex::facets() const {
  std::vector<Simplex> out;
  if (vertices_.size() < 2) return out;
  out.reserve(vertices_.size());
  for (std::size_t skip = 0; skip < vertices_.size(); ++skip) {
    std::vector<Vertex> f;
    f.reserve(vertices_.size() - 1);
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (i != skip) f.push_back(vertices_[i]);
    }
    out.push_back(Simplex(Sorted{}, std::move(f)));
  }
  return out;
}

std::strong_ordering operator<=>(const Simplex& x, const Simplex& y) {
  if (auto c = x.vertices_.size() <=> y.vertices_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(x.vertices_.begin(), x.vertices_.end(), y.vertices_.begin(),
                                                y.vertices_.end());
}

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (Vertex v : s.vertices()) {
    h ^= v;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

SimplicialComplex SimplicialComplex::from_facets(const std::vector<std::vector<Vertex>>& facets,
                                                 std::vector<std::string> labels) {
  std::vector<Simplex> all;
  for (const auto& raw : facets) {
    const Simplex facet(raw);
    const std::size_t n = facet.size();
    if (n > 24) fail(Errc::too_large, "facet too large to close downward");
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<Vertex> face;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) face.push_back(facet[i]);
      }
      all.emplace_back(std::move(face));
    }
  }
  return from_simplices(std::move(all), std::move(labels), kComplete);
}

SimplicialComplex SimplicialComplex::from_simplices(std::vector<Simplex> simplices, std::vector<std::string> labels,
                                                    int complete_through) {
  std::sort(simplices.begin(), simplices.end());
  simplices.erase(std::unique(simplices.begin(), simplices.end()), simplices.end());

  SimplicialComplex x;
  x.complete_through_ = complete_through;
  Vertex max_vertex = 0;
  bool any = false;
  for (auto& s : simplices) {
    const auto d = static_cast<std::size_t>(s.dimension());
    if (x.by_dim_.size() <= d) x.by_dim_.resize(d + 1);
    max_vertex = std::max(max_vertex, s.vertices().back());
    any = true;
    x.by_dim_[d].push_back(std::move(s));
  }
  if (labels.empty()) {
    if (any) {
      labels.reserve(max_vertex + 1);
      for (Vertex v = 0; v <= max_vertex; ++v) labels.push_back(std::to_string(v));
    }
  } else if (any && max_vertex >= labels.size()) {
    fail(Errc::invalid_input, "vertex " + std::to_string(max_vertex) + " has no label");
  }
  x.labels_ = std::move(labels);
  for (const auto& layer : x.by_dim_) {
    if (layer.empty()) fail(Errc::invalid_input, "complex skips a dimension, so it cannot be downward closed");
  }
  x.index();
  if (!x.is_downward_closed()) fail(Errc::invalid_input, "simplex family is not downward closed");
  return x;
}

void SimplicialComplex::index() {
  lookup_.assign(by_dim_.size(), {});
  for (std::size_t d = 0; d < by_dim_.size(); ++d) {
    lookup_[d].reserve(by_dim_[d].size());
    for (std::size_t i = 0; i < by_dim_[d].size(); ++i) lookup_[d].emplace(by_dim_[d][i], i);
  }
}

std::size_t SimplicialComplex::count(int dim) const noexcept {
  if (dim < 0 || dim > dimension()) return 0;
  return by_dim_[static_cast<std::size_t>(dim)].size();
}

std::size_t SimplicialComplex::total_count() const noexcept {
  std::size_t n = 0;
  for (const auto& layer : by_dim_) n += layer.size();
  return n;
}

std::span<const Simplex> SimplicialComplex::simplices(int dim) const noexcept {
  if (dim < 0 || dim > dimension()) return {};
  return by_dim_[static_cast<std::size_t>(dim)];
}

std::vector<Vertex> SimplicialComplex::vertices() const {
  std::vector<Vertex> out;
  for (const auto& s : simplices(0)) out.push_back(s[0]);
  return out;
}

bool SimplicialComplex::contains(const Simplex& s) const noexcept { return index_of(s).has_value(); }

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const noexcept {
  const int d = s.dimension();
  if (d > dimension()) return std::nullopt;
  const auto& table = lookup_[static_cast<std::size_t>(d)];
  if (auto it = table.find(s); it != table.end()) return it->second;
  return std::nullopt;
}

std::string SimplicialComplex::label(Vertex v) const {
  if (v < labels_.size()) return labels_[v];
  return std::to_string(v);
}

std::vector<std::size_t> SimplicialComplex::f_vector() const {
  std::vector<std::size_t> f;
  for (const auto& layer : by_dim_) f.push_back(layer.size());
  return f;
}

long SimplicialComplex::euler_characteristic() const {
  long chi = 0;
  for (std::size_t d = 0; d < by_dim_.size(); ++d) {
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(by_dim_[d].size());
  }
  return chi;
}

bool SimplicialComplex::is_downward_closed() const {
  for (std::size_t d = 1; d < by_dim_.size(); ++d) {
    for (const auto& s : by_dim_[d]) {
      for (const auto& f : s.facets()) {
        if (!lookup_[d - 1].contains(f)) return false;
      }
    }
  }
  return true;
}

linalg::SparseIntMatrix SimplicialComplex::boundary_matrix(int dim) const {
  linalg::SparseIntMatrix m;
  if (dim < 0) fail(Errc::invalid_input, "boundary matrix of negative dimension");
  if (dim == 0) {
    m.rows = empty() ? 0 : 1;
    m.cols = count(0);
    m.columns.assign(m.cols, {{0u, 1}});
    return m;
  }
  m.rows = count(dim - 1);
  m.cols = count(dim);
  m.columns.resize(m.cols);
  const auto& rows = lookup_[static_cast<std::size_t>(dim - 1)];
  for (std::size_t j = 0; j < m.cols; ++j) {
    const auto faces = by_dim_[static_cast<std::size_t>(dim)][j].facets();
    auto& col = m.columns[j];
    for (std::size_t i = 0; i < faces.size(); ++i) {
      col.emplace_back(static_cast<std::uint32_t>(rows.at(faces[i])), i % 2 == 0 ? 1 : -1);
    }
    std::sort(col.begin(), col.end());
  }
  return m;
}

namespace {

Simplex merged(const Simplex& a, const Simplex& b) {
  std::vector<Vertex> u;
  u.reserve(a.size() + b.size());
  std::set_union(a.vertices().begin(), a.vertices().end(), b.vertices().begin(), b.vertices().end(),
                 std::back_inserter(u));
  return Simplex(std::move(u));
}

void require_member(const SimplicialComplex& x, const Simplex& d) {
  if (!x.contains(d)) fail(Errc::invalid_input, "simplex is not a member of the complex");
}

int shifted_completeness(const SimplicialComplex& x, const Simplex& d) {
  if (x.complete_through() == SimplicialComplex::kComplete) return SimplicialComplex::kComplete;
  return x.complete_through() - static_cast<int>(d.size());
}

}  // namespace

SimplicialComplex star(const SimplicialComplex& x, const std::optional<Simplex>& d) {
  if (!d) return x;
  require_member(x, *d);
  std::vector<Simplex> kept;
  for (int dim = 0; dim <= x.dimension(); ++dim) {
    for (const auto& s : x.simplices(dim)) {
      if (x.contains(merged(s, *d))) kept.push_back(s);
    }
  }
  return SimplicialComplex::from_simplices(std::move(kept), x.labels(), shifted_completeness(x, *d));
}

SimplicialComplex link(const SimplicialComplex& x, const std::optional<Simplex>& d) {
  if (!d) return x;
  require_member(x, *d);
  std::vector<Simplex> kept;
  for (int dim = 0; dim <= x.dimension(); ++dim) {
    for (const auto& s : x.simplices(dim)) {
      if (!s.intersects(*d) && x.contains(merged(s, *d))) kept.push_back(s);
    }
  }
  return SimplicialComplex::from_simplices(std::move(kept), x.labels(), shifted_completeness(x, *d));
}

BettiReport reduced_betti(const SimplicialComplex& x, int up_to) {
  if (up_to < 0) fail(Errc::invalid_input, "up_to must be non-negative");
  if (x.complete_through() != SimplicialComplex::kComplete && x.complete_through() < up_to + 1) {
    fail(Errc::incomplete_skeleton, "reduced Betti numbers through dimension " + std::to_string(up_to) +
                                        " need the " + std::to_string(up_to + 1) + "-skeleton, but the complex is only "
                                        "complete through dimension " + std::to_string(x.complete_through()));
  }
  BettiReport report;
  report.computed_up_to = up_to;
  for (int d = 0; d <= up_to + 1; ++d) {
    report.boundary_ranks.push_back(d <= x.dimension() ? linalg::exact_rank(x.boundary_matrix(d)) : 0);
  }
  for (int i = 0; i <= up_to; ++i) {
    const auto f = x.count(i);
    const auto r_in = report.boundary_ranks[static_cast<std::size_t>(i)];
    const auto r_out = report.boundary_ranks[static_cast<std::size_t>(i + 1)];
    if (r_in + r_out > f) fail(Errc::internal_invariant, "boundary ranks exceed chain rank");
    report.reduced_betti.push_back(f - r_in - r_out);
  }
  return report;
}

std::vector<std::vector<Vertex>> connected_components(const SimplicialComplex& x) {
  const auto verts = x.vertices();
  if (verts.empty()) return {};
  std::unordered_map<Vertex, std::size_t> slot;
  for (std::size_t i = 0; i < verts.size(); ++i) slot.emplace(verts[i], i);
  UnionFind uf(verts.size());
  for (const auto& e : x.simplices(1)) uf.unite(slot.at(e[0]), slot.at(e[1]));
  std::map<std::size_t, std::vector<Vertex>> groups;
  for (std::size_t i = 0; i < verts.size(); ++i) groups[uf.find(i)].push_back(verts[i]);
  std::vector<std::vector<Vertex>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace laxbases::topology
