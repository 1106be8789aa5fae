#pragma once

// The group K of pairs (n, w), n an integer and w in
// V'' = <a_1, ..., a_k, a_{k+1}, b_{k+1}, ..., a_g, b_g>, with product
// (n1, w1)(n2, w2) = (n1 + n2 + i(w1, w2), w1 + w2), and the rational
// coinvariants of its abelianization under symplectic stabilizer elements.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "laxbases/zl_linalg.hpp"

namespace laxbases::heisenberg {

class KContext {
 public:
  // Requires 1 <= k <= g.
  KContext(int g, int k);

  int g() const noexcept { return g_; }
  int k() const noexcept { return k_; }
  std::size_t dimension() const noexcept { return ambient_.size(); }  // 2g - k

  // Ambient coordinate (a_1, b_1, ... order) of the j-th basis vector of V''.
  std::size_t ambient_coordinate(std::size_t j) const { return ambient_.at(j); }
  std::string basis_name(std::size_t j) const;

  // Restricted intersection form.
  mpz_class form(const std::vector<mpz_class>& x, const std::vector<mpz_class>& y) const;

  friend bool operator==(const KContext& x, const KContext& y) { return x.g_ == y.g_ && x.k_ == y.k_; }

 private:
  int g_;
  int k_;
  std::vector<std::size_t> ambient_;
};

struct KElement {
  mpz_class n;
  std::vector<mpz_class> w;  // V'' coordinates

  friend bool operator==(const KElement&, const KElement&) = default;
  std::string to_string() const;
};

KElement k_identity(const KContext& ctx);
KElement k_element(const KContext& ctx, long n, const std::vector<long>& w);

KElement k_multiply(const KElement& x, const KElement& y, const KContext& ctx);
KElement k_inverse(const KElement& x, const KContext& ctx);
KElement k_commutator(const KElement& x, const KElement& y, const KContext& ctx);

// The w-coordinate as a rational vector; k = g raises unsupported_context.
std::vector<mpq_class> abelianization_image(const KElement& x, const KContext& ctx);

// Raises invalid_generator unless the 2g x 2g integer matrix is symplectic
// over Z, fixes a_1, ..., a_k and maps V'' into itself.
void validate_generator(const KContext& ctx, const linalg::IntMatrix& a);

// dim of (V'' (x) Q) / span{(A - I) w}, by exact rational rank.
std::size_t coinvariant_dimension(const KContext& ctx, const std::vector<linalg::IntMatrix>& generators);

// T_v^L for v in V'' orthogonal to a_1, ..., a_k.
linalg::IntMatrix transvection_power(const KContext& ctx, const std::vector<long>& v_ambient, long power);

// T_v^L for v = a_j, b_j, a_j + b_j (j > k) and v = a_i + a_{k+1}, a_i + b_{k+1} (i <= k).
std::vector<linalg::IntMatrix> default_generators(const KContext& ctx, long L);
// T_v^L for every nonzero v in V'' with coordinates in {-1, 0, 1}.
std::vector<linalg::IntMatrix> enlarged_generators(const KContext& ctx, long L);

struct CoinvariantReport {
  std::size_t ambient_dimension = 0;  // 2g - k
  std::size_t dimension = 0;
  std::size_t generators_used = 0;
  bool enlarged = false;   // the default set fell short and the enlarged set was tried
  bool proved_zero = false;
};

// Default generators first, the enlarged set only if they do not reach 0.
CoinvariantReport compute_coinvariants(const KContext& ctx, long L);

// The symplectic matrix with b_1 -> b_1 + v, a_1 -> a_1, s -> s + i(v, s) a_1
// for the other basis vectors, where v = n a_1 + w. Needs w's a_1-coordinate zero.
linalg::IntMatrix embedding_matrix(const KContext& ctx, const KElement& x);

}  // namespace laxbases::heisenberg
