#include "laxbases/simplicial.hpp"

#include <algorithm>

namespace laxbases::topology {

namespace {

void require_supported(int n) {
  if (n < -1) fail(Errc::invalid_input, "manifold dimension must be at least -1");
  if (n > 2) fail(Errc::unsupported_dimension, "combinatorial recognition is only implemented for n <= 2");
}

bool connected(const SimplicialComplex& x) { return connected_components(x).size() == 1; }

// Every maximal simplex has dimension n.
bool pure(const SimplicialComplex& x, int n) {
  if (x.dimension() != n) return false;
  for (int d = 0; d < n; ++d) {
    for (const auto& s : x.simplices(d)) {
      bool covered = false;
      for (const auto& t : x.simplices(d + 1)) {
        if (std::includes(t.vertices().begin(), t.vertices().end(), s.vertices().begin(), s.vertices().end())) {
          covered = true;
          break;
        }
      }
      if (!covered) return false;
    }
  }
  return true;
}

bool is_path(const SimplicialComplex& x) {
  if (x.dimension() != 1 || !connected(x)) return false;
  std::size_t ends = 0;
  for (const auto& v : x.simplices(0)) {
    const auto deg = link(x, v).count(0);
    if (deg == 1) {
      ++ends;
    } else if (deg != 2) {
      return false;
    }
  }
  return ends == 2 && x.count(1) + 1 == x.count(0);
}

}  // namespace

bool is_combinatorial_sphere(const SimplicialComplex& x, int n) {
  require_supported(n);
  if (x.empty()) return true;
  switch (n) {
    case -1:
      return false;
    case 0:
      return x.dimension() == 0 && x.count(0) == 2;
    case 1:
      if (x.dimension() != 1 || !connected(x)) return false;
      for (const auto& v : x.simplices(0)) {
        const auto l = link(x, v);
        if (l.dimension() != 0 || l.count(0) != 2) return false;
      }
      return true;
    default:
      if (x.dimension() != 2 || !connected(x) || x.euler_characteristic() != 2) return false;
      for (const auto& v : x.simplices(0)) {
        const auto l = link(x, v);
        if (l.empty() || !is_combinatorial_sphere(l, 1)) return false;
      }
      return true;
  }
}

bool is_combinatorial_ball(const SimplicialComplex& x, int n) {
  require_supported(n);
  if (x.empty()) return true;
  switch (n) {
    case -1:
      return false;
    case 0:
      return x.dimension() == 0 && x.count(0) == 1;
    case 1:
      return is_path(x);
    default: {
      if (!pure(x, 2) || !connected(x) || x.euler_characteristic() != 1) return false;
      for (const auto& v : x.simplices(0)) {
        const auto l = link(x, v);
        if (l.empty()) return false;
        if (!is_combinatorial_sphere(l, 1) && !is_combinatorial_ball(l, 1)) return false;
      }
      const auto boundary = manifold_boundary(x, 2);
      return !boundary.empty() && is_combinatorial_sphere(boundary, 1);
    }
  }
}

SimplicialComplex manifold_boundary(const SimplicialComplex& x, int n) {
  require_supported(n);
  if (n <= 0 || x.dimension() < n) return {};
  std::unordered_map<Simplex, std::size_t, SimplexHash> cofaces;
  for (const auto& top : x.simplices(n)) {
    for (const auto& f : top.facets()) ++cofaces[f];
  }
  std::vector<std::vector<Vertex>> facets;
  for (const auto& f : x.simplices(n - 1)) {
    if (auto it = cofaces.find(f); it != cofaces.end() && it->second == 1) {
      facets.emplace_back(f.vertices().begin(), f.vertices().end());
    }
  }
  if (facets.empty()) return {};
  return SimplicialComplex::from_facets(facets, x.labels());
}

}  // namespace laxbases::topology
