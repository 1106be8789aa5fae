#pragma once

// Finite abstract simplicial complexes: a downward-closed family of nonempty
// finite vertex sets. Star and link of the empty simplex are the whole complex.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "laxbases/errors.hpp"
#include "laxbases/exact_rank.hpp"

namespace laxbases::topology {

using Vertex = std::uint32_t;

class Simplex {
 public:
  // Sorts; rejects empty input and repeated vertices.
  explicit Simplex(std::vector<Vertex> vertices);
  Simplex(std::initializer_list<Vertex> vertices) : Simplex(std::vector<Vertex>(vertices)) {}

  int dimension() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
  std::size_t size() const noexcept { return vertices_.size(); }
  std::span<const Vertex> vertices() const noexcept { return vertices_; }
  Vertex operator[](std::size_t i) const { return vertices_[i]; }
  bool contains(Vertex v) const noexcept;
  bool intersects(const Simplex& other) const noexcept;

  // Faces of codimension one, in the order of the vertex they omit.
  std::vector<Simplex> facets() const;

  friend bool operator==(const Simplex&, const Simplex&) = default;
  friend std::strong_ordering operator<=>(const Simplex& x, const Simplex& y);

 private:
  struct Sorted {};
  Simplex(Sorted, std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {}

  std::vector<Vertex> vertices_;
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept;
};

class SimplicialComplex {
 public:
  static constexpr int kComplete = std::numeric_limits<int>::max();

  SimplicialComplex() = default;

  // Closes the facets downward. Labels default to the vertex numbers.
  static SimplicialComplex from_facets(const std::vector<std::vector<Vertex>>& facets,
                                       std::vector<std::string> labels = {});

  // Takes an explicit simplex list and rejects it unless it is downward closed.
  // complete_through records the largest dimension known to be fully present.
  static SimplicialComplex from_simplices(std::vector<Simplex> simplices, std::vector<std::string> labels = {},
                                          int complete_through = kComplete);

  bool empty() const noexcept { return by_dim_.empty(); }
  int dimension() const noexcept { return static_cast<int>(by_dim_.size()) - 1; }
  std::size_t count(int dim) const noexcept;
  std::size_t total_count() const noexcept;
  std::span<const Simplex> simplices(int dim) const noexcept;
  std::vector<Vertex> vertices() const;

  bool contains(const Simplex& s) const noexcept;
  std::optional<std::size_t> index_of(const Simplex& s) const noexcept;

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::string label(Vertex v) const;
  int complete_through() const noexcept { return complete_through_; }

  std::vector<std::size_t> f_vector() const;
  long euler_characteristic() const;
  bool is_downward_closed() const;

  // Boundary map from dim-simplices to (dim-1)-simplices with the usual
  // alternating signs; dim = 0 gives the augmentation row.
  linalg::SparseIntMatrix boundary_matrix(int dim) const;

  // Subcomplex of the simplices accepted by keep; the result must be closed.
  template <class Keep>
  SimplicialComplex filtered(Keep&& keep) const {
    std::vector<Simplex> kept;
    for (const auto& layer : by_dim_) {
      for (const auto& s : layer) {
        if (keep(s)) kept.push_back(s);
      }
    }
    return from_simplices(std::move(kept), labels_, complete_through_);
  }

  friend bool operator==(const SimplicialComplex& x, const SimplicialComplex& y) {
    return x.by_dim_ == y.by_dim_;
  }

 private:
  void index();

  std::vector<std::vector<Simplex>> by_dim_;
  std::vector<std::unordered_map<Simplex, std::size_t, SimplexHash>> lookup_;
  std::vector<std::string> labels_;
  int complete_through_ = kComplete;
};

// Star_X(D): every simplex lying in a common simplex with D. nullopt means D = {}.
SimplicialComplex star(const SimplicialComplex& x, const std::optional<Simplex>& d);
// Link_X(D): the simplices of Star_X(D) disjoint from D.
SimplicialComplex link(const SimplicialComplex& x, const std::optional<Simplex>& d);

struct BettiReport {
  std::vector<std::size_t> reduced_betti;  // indices 0 .. computed_up_to
  int computed_up_to = -1;
  std::vector<std::size_t> boundary_ranks;  // rank of d_0 .. d_{up_to + 1}
};

// Exact rational reduced Betti numbers. Requires the complex to be complete
// through dimension up_to + 1.
BettiReport reduced_betti(const SimplicialComplex& x, int up_to);

// Union-find partition of the vertex set; components sorted by least vertex.
std::vector<std::vector<Vertex>> connected_components(const SimplicialComplex& x);

// Recognition for n in {-1, 0, 1, 2}; larger n is rejected.
bool is_combinatorial_sphere(const SimplicialComplex& x, int n);
bool is_combinatorial_ball(const SimplicialComplex& x, int n);

// Simplices of a combinatorial n-manifold whose link is a ball (dimension < n).
SimplicialComplex manifold_boundary(const SimplicialComplex& x, int n);

using Permutation = std::vector<Vertex>;

struct GroupAction {
  std::vector<Permutation> generators;  // each a permutation of the label table
};

struct RotationWitness {
  Simplex simplex;
  std::size_t element;  // index into the element list that was checked
};

// First simplex whose setwise stabilizer contains an element that moves one
// of its vertices, or nullopt if the elements act without rotations.
std::optional<RotationWitness> find_rotation(const SimplicialComplex& x, std::span<const Permutation> elements);

// Closure of the generators under composition, capped at size_guard elements.
std::vector<Permutation> generate_group(const GroupAction& action, std::size_t degree,
                                        std::size_t size_guard = 1'000'000);

class RotationViolation : public Error {
 public:
  RotationViolation(Simplex simplex, Permutation element, const std::string& message)
      : Error(Errc::rotation_violation, message), simplex_(std::move(simplex)), element_(std::move(element)) {}
  const Simplex& simplex() const noexcept { return simplex_; }
  const Permutation& element() const noexcept { return element_; }

 private:
  Simplex simplex_;
  Permutation element_;
};

// Quotient by a finite permutation group acting without rotations. Vertices of
// the result are orbits, labelled by the sorted labels of their members.
SimplicialComplex quotient_without_rotations(const SimplicialComplex& x, const GroupAction& action);

}  // namespace laxbases::topology
