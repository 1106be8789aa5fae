#pragma once

// Seeded generators for the property tests. Every property draws from its own
// std::mt19937_64 so failures reproduce from the printed seed alone.

#include <cstdint>
#include <random>
#include <vector>

#include "laxbases/bases_complex.hpp"
#include "laxbases/zl_linalg.hpp"

namespace laxbases::testing {

inline constexpr std::uint64_t kSeed = 20240917;

class Gen {
 public:
  explicit Gen(std::uint64_t seed = kSeed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }

  linalg::ZLVector vector(int g, std::int64_t L) {
    std::vector<std::int64_t> c(2 * static_cast<std::size_t>(g));
    for (auto& x : c) x = integer(0, L - 1);
    return linalg::ZLVector(g, linalg::Modulus(L), std::move(c));
  }

  linalg::ZLVector primitive(int g, std::int64_t L) {
    while (true) {
      auto v = vector(g, L);
      if (linalg::is_primitive(v)) return v;
    }
  }

  // A vertex of the complex, by rejection.
  linalg::LaxVector vertex(const bases::BasesSpec& spec) {
    while (true) {
      auto v = vector(spec.g, spec.L);
      if (bases::is_vertex(spec, v)) return linalg::canonical_lax(v);
    }
  }

  // A vertex forming a simplex with all of context, by rejection; nullopt if
  // none turned up within the attempt budget.
  std::optional<linalg::LaxVector> joinable(const bases::BasesSpec& spec,
                                            const std::vector<linalg::LaxVector>& context, int attempts = 20000) {
    for (int i = 0; i < attempts; ++i) {
      auto v = vertex(spec);
      auto family = context;
      family.push_back(v);
      if (bases::is_simplex(spec, family)) return v;
    }
    return std::nullopt;
  }

  linalg::IntMatrix matrix(std::size_t rows, std::size_t cols, long lo, long hi) {
    linalg::IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = integer(lo, hi);
    }
    return m;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace laxbases::testing
