#include <algorithm>
#include <map>
#include <set>

#include "laxbases/simplicial.hpp"
#include "laxbases/union_find.hpp"

namespace laxbases::topology {

namespace {

std::string describe(const Permutation& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(p[i]);
  }
  return out + "]";
}

std::string describe(const SimplicialComplex& x, const Simplex& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += x.label(s[i]);
  }
  return out + "}";
}

void require_permutation(const Permutation& p, std::size_t degree) {
  if (p.size() != degree) {
    fail(Errc::invalid_input, "permutation has degree " + std::to_string(p.size()) + ", expected " +
                                  std::to_string(degree));
  }
  std::vector<bool> seen(degree, false);
  for (Vertex v : p) {
    if (v >= degree || seen[v]) fail(Errc::invalid_input, "not a permutation: " + describe(p));
    seen[v] = true;
  }
}

std::vector<Vertex> image_of(const Simplex& s, const Permutation& p) {
  std::vector<Vertex> out;
  out.reserve(s.size());
  for (Vertex v : s.vertices()) out.push_back(p[v]);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t degree_of(const SimplicialComplex& x) {
  const auto verts = x.vertices();
  return std::max<std::size_t>(x.labels().size(), verts.empty() ? 0 : verts.back() + 1);
}

}  // namespace

std::optional<RotationWitness> find_rotation(const SimplicialComplex& x, std::span<const Permutation> elements) {
  const auto degree = degree_of(x);
  for (const auto& p : elements) {
    if (p.size() < degree) fail(Errc::invalid_input, "permutation does not cover the vertex set");
  }
  for (int d = 1; d <= x.dimension(); ++d) {
    for (const auto& s : x.simplices(d)) {
      for (std::size_t e = 0; e < elements.size(); ++e) {
        const auto& p = elements[e];
        const auto img = image_of(s, p);
        if (!std::equal(img.begin(), img.end(), s.vertices().begin())) continue;
        for (Vertex v : s.vertices()) {
          if (p[v] != v) return RotationWitness{s, e};
        }
      }
    }
  }
  return std::nullopt;
}

std::vector<Permutation> generate_group(const GroupAction& action, std::size_t degree, std::size_t size_guard) {
  for (const auto& p : action.generators) require_permutation(p, degree);
  Permutation id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = static_cast<Vertex>(i);
  std::vector<Permutation> elements{id};
  std::set<Permutation> seen{id};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& gen : action.generators) {
      Permutation next(degree);
      for (std::size_t i = 0; i < degree; ++i) next[i] = gen[elements[head][i]];
      if (seen.insert(next).second) {
        if (elements.size() >= size_guard) {
          fail(Errc::too_large, "generated group exceeds the size guard of " + std::to_string(size_guard));
        }
        elements.push_back(std::move(next));
      }
    }
  }
  return elements;
}

SimplicialComplex quotient_without_rotations(const SimplicialComplex& x, const GroupAction& action) {
  const auto degree = degree_of(x);
  for (const auto& p : action.generators) {
    require_permutation(p, degree);
    for (int d = 0; d <= x.dimension(); ++d) {
      for (const auto& s : x.simplices(d)) {
        if (!x.contains(Simplex(image_of(s, p)))) {
          fail(Errc::invalid_input, "generator " + describe(p) + " does not map " + describe(x, s) + " to a simplex");
        }
      }
    }
  }
  const auto group = generate_group(action, degree);

  if (auto w = find_rotation(x, group)) {
    throw RotationViolation(w->simplex, group[w->element],
                            "stabilizer of " + describe(x, w->simplex) + " contains " + describe(group[w->element]) +
                                ", which does not fix it pointwise");
  }

  UnionFind uf(degree);
  for (const auto& p : action.generators) {
    for (std::size_t v = 0; v < degree; ++v) uf.unite(v, p[v]);
  }
  std::map<std::size_t, std::vector<Vertex>> members;
  for (Vertex v : x.vertices()) members[uf.find(v)].push_back(v);
  std::vector<Vertex> orbit_of(degree, 0);
  std::vector<std::string> labels;
  for (const auto& [root, vs] : members) {
    std::vector<std::string> names;
    for (Vertex v : vs) {
      orbit_of[v] = static_cast<Vertex>(labels.size());
      names.push_back(x.label(v));
    }
    std::sort(names.begin(), names.end());
    std::string label = "{";
    for (std::size_t i = 0; i < names.size(); ++i) label += (i ? "," : "") + names[i];
    labels.push_back(label + "}");
  }

  // Canonical member of each simplex orbit, used to detect two orbits sharing an image.
  auto orbit_key = [&](const Simplex& s) {
    std::vector<Vertex> best = image_of(s, group.front());
    for (const auto& p : group) best = std::min(best, image_of(s, p));
    return best;
  };

  std::vector<Simplex> image_simplices;
  std::map<std::vector<Vertex>, std::pair<std::vector<Vertex>, Simplex>> seen_images;
  for (int d = 0; d <= x.dimension(); ++d) {
    for (const auto& s : x.simplices(d)) {
      std::vector<Vertex> img;
      for (Vertex v : s.vertices()) img.push_back(orbit_of[v]);
      std::sort(img.begin(), img.end());
      if (std::adjacent_find(img.begin(), img.end()) != img.end()) {
        fail(Errc::non_simplicial_quotient, "orbit map collapses " + describe(x, s));
      }
      auto key = orbit_key(s);
      auto [it, fresh] = seen_images.try_emplace(img, key, s);
      if (fresh) {
        image_simplices.emplace_back(img);
      } else if (it->second.first != key) {
        fail(Errc::non_simplicial_quotient, "distinct simplex orbits of " + describe(x, it->second.second) + " and " +
                                                describe(x, s) + " have the same image");
      }
    }
  }
  return SimplicialComplex::from_simplices(std::move(image_simplices), std::move(labels), x.complete_through());
}

}  // namespace laxbases::topology
