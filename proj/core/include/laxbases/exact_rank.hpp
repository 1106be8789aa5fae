#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace laxbases::linalg {

// Column-major sparse integer matrix; each column lists (row, value) pairs
// with strictly increasing rows and non-zero values.
struct SparseIntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> columns;
};

// Rank over the rationals, computed exactly by fraction-free column
// reduction. Falls back to arbitrary precision if 64-bit entries overflow.
std::size_t exact_rank(const SparseIntMatrix& m);

// Rank over F_p; a lower bound for the rational rank, used only as a pre-screen.
std::size_t modular_rank(const SparseIntMatrix& m, std::uint32_t prime);

}  // namespace laxbases::linalg
