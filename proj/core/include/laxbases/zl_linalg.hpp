#pragma once

// Exact arithmetic on (Z_L)^{2g} with the standard symplectic pairing.
//
// Coordinates are ordered (a_1, b_1, ..., a_g, b_g) so the intersection form
// is block diagonal: i(a_j, b_j) = 1, i(b_j, a_j) = -1, all other pairings 0.
// The modulus L = 0 stands for the ring of integers.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace laxbases::linalg {

__extension__ typedef __int128 int128;

class Modulus {
 public:
  // Rejects L = 1 (the zero ring) and negative values.
  explicit Modulus(std::int64_t value);

  std::int64_t value() const noexcept { return value_; }
  bool is_integers() const noexcept { return value_ == 0; }

  // Representative in [0, L); the identity when L = 0.
  std::int64_t reduce(std::int64_t x) const noexcept;
  std::int64_t reduce_wide(int128 x) const;

  bool is_unit(std::int64_t x) const noexcept;

  friend bool operator==(Modulus, Modulus) = default;
  friend auto operator<=>(Modulus, Modulus) = default;

 private:
  std::int64_t value_;
};

inline constexpr std::size_t coordinate_of_a(int i) { return 2 * static_cast<std::size_t>(i - 1); }
inline constexpr std::size_t coordinate_of_b(int i) { return 2 * static_cast<std::size_t>(i - 1) + 1; }

// An element of H_1(Sigma_g; Z_L) in the fixed symplectic basis.
class ZLVector {
 public:
  ZLVector(int genus, Modulus modulus, std::vector<std::int64_t> coords);

  static ZLVector zero(int genus, Modulus modulus);
  static ZLVector basis_a(int genus, Modulus modulus, int i);
  static ZLVector basis_b(int genus, Modulus modulus, int i);

  int genus() const noexcept { return genus_; }
  Modulus modulus() const noexcept { return modulus_; }
  std::size_t size() const noexcept { return coords_.size(); }
  std::span<const std::int64_t> coords() const noexcept { return coords_; }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }

  bool is_zero() const noexcept;
  ZLVector scaled(std::int64_t c) const;

  ZLVector operator-() const;
  friend ZLVector operator+(const ZLVector& x, const ZLVector& y);
  friend ZLVector operator-(const ZLVector& x, const ZLVector& y);

  friend bool operator==(const ZLVector&, const ZLVector&) = default;
  friend std::strong_ordering operator<=>(const ZLVector& x, const ZLVector& y);

  std::string to_string() const;

 private:
  int genus_;
  Modulus modulus_;
  std::vector<std::int64_t> coords_;
};

void require_same_shape(const ZLVector& x, const ZLVector& y);

std::int64_t intersection_form(const ZLVector& x, const ZLVector& y);

bool is_primitive(const ZLVector& v);

// The unordered pair {v, -v} of a primitive vector, stored through its
// lexicographically least member.
class LaxVector {
 public:
  const ZLVector& rep() const noexcept { return rep_; }
  int genus() const noexcept { return rep_.genus(); }
  Modulus modulus() const noexcept { return rep_.modulus(); }

  friend bool operator==(const LaxVector&, const LaxVector&) = default;
  friend std::strong_ordering operator<=>(const LaxVector& x, const LaxVector& y) {
    return x.rep_ <=> y.rep_;
  }

  std::string to_string() const;

 private:
  explicit LaxVector(ZLVector rep) : rep_(std::move(rep)) {}
  friend LaxVector canonical_lax(const ZLVector& v);

  ZLVector rep_;
};

LaxVector canonical_lax(const ZLVector& v);

struct LaxVectorHash {
  std::size_t operator()(const LaxVector& v) const noexcept;
};

// Dense integer matrix with arbitrary-precision entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix from_row_vectors(std::span<const ZLVector> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  mpz_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpz_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix transpose() const;
  IntMatrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
  friend bool operator==(const IntMatrix& x, const IntMatrix& y);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

// Fraction-free (Bareiss) determinant.
mpz_class determinant(const IntMatrix& a);

// gcd of all k x k minors of the k x 2g integer lift of vs.
mpz_class maximal_minor_gcd(std::span<const ZLVector> vs);

// True iff span(vs) is a free rank-k direct summand of (Z_L)^{2g}.
bool is_free_summand(std::span<const ZLVector> vs);

// Gram matrix of the standard symplectic form in (a_1, b_1, ...) order.
IntMatrix symplectic_form(int genus);

// M^T J M == J, entries compared modulo L (exactly when L = 0).
bool preserves_symplectic_form(const IntMatrix& m, Modulus modulus);

}  // namespace laxbases::linalg
