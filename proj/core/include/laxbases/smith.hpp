#pragma once

#include <vector>

#include <gmpxx.h>

#include "laxbases/zl_linalg.hpp"

namespace laxbases::linalg {

/// Smith normal form of an integer matrix: U * A * V == D with U and V
/// unimodular and D diagonal, d_1 | d_2 | ... and every d_i >= 0.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
};

SmithForm smith_normal_form(const IntMatrix& a);

/// Diagonal of the Smith form without accumulating the transforms.
std::vector<mpz_class> smith_invariants(const IntMatrix& a);

}  // namespace laxbases::linalg
