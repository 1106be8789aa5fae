#pragma once

// Sp_{2g}(Z_L) acting on column vectors from the left, transvections, orbit
// enumeration with replayable witnesses, and the without-rotations check.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "laxbases/bases_complex.hpp"
#include "laxbases/simplicial.hpp"
#include "laxbases/zl_linalg.hpp"

namespace laxbases::sp {

using linalg::LaxVector;
using linalg::Modulus;
using linalg::ZLVector;

class SpElement {
 public:
  // Row-major 2g x 2g entries, reduced mod L; rejects non-symplectic input.
  static SpElement from_entries(int genus, Modulus modulus, std::vector<std::int64_t> entries);
  static SpElement identity(int genus, Modulus modulus);

  int genus() const noexcept { return genus_; }
  Modulus modulus() const noexcept { return modulus_; }
  std::size_t dimension() const noexcept { return 2 * static_cast<std::size_t>(genus_); }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return entries_[r * dimension() + c]; }
  std::span<const std::int64_t> entries() const noexcept { return entries_; }
  linalg::IntMatrix matrix() const;

  ZLVector apply(const ZLVector& x) const;
  LaxVector apply(const LaxVector& x) const;
  SpElement inverse() const;  // -J M^T J

  friend SpElement operator*(const SpElement& x, const SpElement& y);
  friend bool operator==(const SpElement&, const SpElement&) = default;
  friend std::strong_ordering operator<=>(const SpElement& x, const SpElement& y);

  std::string to_string() const;

 private:
  SpElement(int genus, Modulus modulus, std::vector<std::int64_t> entries)
      : genus_(genus), modulus_(modulus), entries_(std::move(entries)) {}
  friend SpElement transvection(const ZLVector& v);
  friend SpElement reduction_map(const SpElement& m, Modulus target);

  int genus_;
  Modulus modulus_;
  std::vector<std::int64_t> entries_;
};

struct SpElementHash {
  std::size_t operator()(const SpElement& m) const noexcept;
};

// M^T J M == J mod L; shape mismatch raises invalid_input.
bool is_symplectic(const linalg::IntMatrix& m, Modulus modulus);

// x -> x + i(x, v) v.
SpElement transvection(const ZLVector& v);

// Distinct transvections over all nonzero v.
std::vector<SpElement> all_transvections(int genus, Modulus modulus);

// |Sp_{2g}(Z_L)| from the prime-power factorisation of L.
mpz_class estimated_group_order(int genus, Modulus modulus);

// Closure of all transvections under multiplication, in BFS order starting
// from the identity. Raises too_large when the estimated order exceeds the guard.
std::vector<SpElement> enumerate_group(int genus, Modulus modulus, std::size_t size_guard = 1'000'000);

// Kernel of reduction Sp_{2g}(Z_L) -> Sp_{2g}(Z_level), by enumerating
// I + level X. level must divide L.
std::vector<SpElement> enumerate_congruence_kernel(int genus, Modulus modulus, std::int64_t level,
                                                   std::size_t size_guard = 10'000'000);

// Entrywise reduction; target must divide the source modulus.
SpElement reduction_map(const SpElement& m, Modulus target);
ZLVector reduce_vector(const ZLVector& v, Modulus target);

using LaxSimplex = std::vector<LaxVector>;  // sorted, distinct

LaxSimplex make_lax_simplex(std::vector<LaxVector> vs);
LaxVector act(const SpElement& m, const LaxVector& v);
LaxSimplex act(const SpElement& m, const LaxSimplex& s);

// Reached points in BFS order; words[i] lists generator indices, applied
// first to last, carrying base to reached[i].
template <class Point>
struct OrbitCertificate {
  Point base;
  std::vector<Point> reached;
  std::vector<std::vector<std::size_t>> words;
};

OrbitCertificate<LaxVector> orbit(const LaxVector& x, std::span<const SpElement> gens);
OrbitCertificate<LaxSimplex> orbit(const LaxSimplex& x, std::span<const SpElement> gens);

// Replays every witness word; true iff each lands on its claimed point and
// the reached points are distinct.
bool verify_certificate(const OrbitCertificate<LaxVector>& cert, std::span<const SpElement> gens);
bool verify_certificate(const OrbitCertificate<LaxSimplex>& cert, std::span<const SpElement> gens);

// The permutation of vertex ids induced by m; raises invalid_input if m does
// not preserve the vertex set.
topology::Permutation vertex_permutation(const bases::BasesComplex& x, const SpElement& m);

struct RotationReport {
  bool without_rotations = true;
  std::optional<topology::Simplex> witness_simplex;
  std::optional<std::size_t> witness_element;  // index into the checked element list
  std::size_t elements_checked = 0;
  std::size_t simplices_checked = 0;
  bool exhaustive = true;
  std::uint64_t seed = 0;
};

// Exhaustive over the elements given.
RotationReport check_without_rotations(const topology::SimplicialComplex& x,
                                       std::span<const topology::Permutation> elements);

// Verifies that every element acts simplicially, then checks every simplex
// against every element, or against sample_size elements drawn with the seed.
RotationReport check_without_rotations(const bases::BasesComplex& x, std::span<const SpElement> group,
                                       std::optional<std::size_t> sample_size = std::nullopt,
                                       std::uint64_t seed = 0);

}  // namespace laxbases::sp
