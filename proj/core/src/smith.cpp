#include "laxbases/smith.hpp"

#include <optional>
#include <utility>

namespace laxbases::linalg {

namespace {

// Row/column operations applied to D and mirrored on U (rows) and V (columns)
// when transforms are tracked.
class SmithReducer {
 public:
  SmithReducer(const IntMatrix& a, bool track)
      : d_(a), track_(track) {
    if (track_) {
      u_ = IntMatrix::identity(a.rows());
      v_ = IntMatrix::identity(a.cols());
    }
  }

  void run() {
    const std::size_t m = d_.rows();
    const std::size_t n = d_.cols();
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
      if (!reduce_block(t)) break;
      if (d_(t, t) < 0) negate_row(t);
    }
  }

  SmithForm take() { return {std::move(u_), std::move(d_), std::move(v_)}; }
  const IntMatrix& diagonal_matrix() const { return d_; }

 private:
  std::optional<std::pair<std::size_t, std::size_t>> smallest_entry(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    mpz_class best_abs;
    for (std::size_t i = t; i < d_.rows(); ++i) {
      for (std::size_t j = t; j < d_.cols(); ++j) {
        if (d_(i, j) == 0) continue;
        mpz_class a = abs(d_(i, j));
        if (!best || a < best_abs) {
          best = {i, j};
          best_abs = a;
          if (best_abs == 1) return best;
        }
      }
    }
    return best;
  }

  // Returns false when the trailing block is zero.
  bool reduce_block(std::size_t t) {
    while (true) {
      auto pos = smallest_entry(t);
      if (!pos) return false;
      swap_rows(t, pos->first);
      swap_cols(t, pos->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < d_.rows(); ++i) {
        if (d_(i, t) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), d_(i, t).get_mpz_t(), d_(t, t).get_mpz_t());
        add_row_multiple(i, t, -q);
        if (d_(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < d_.cols(); ++j) {
        if (d_(t, j) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), d_(t, j).get_mpz_t(), d_(t, t).get_mpz_t());
        add_col_multiple(j, t, -q);
        if (d_(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the remaining block; otherwise fold the offending
      // row into row t and reduce again with a strictly smaller remainder.
      bool divides = true;
      for (std::size_t i = t + 1; i < d_.rows() && divides; ++i) {
        for (std::size_t j = t + 1; j < d_.cols(); ++j) {
          if (mpz_divisible_p(d_(i, j).get_mpz_t(), d_(t, t).get_mpz_t()) == 0) {
            add_row_multiple(t, i, 1);
            divides = false;
            break;
          }
        }
      }
      if (divides) return true;
    }
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < d_.cols(); ++j) std::swap(d_(a, j), d_(b, j));
    if (track_) {
      for (std::size_t j = 0; j < u_.cols(); ++j) std::swap(u_(a, j), u_(b, j));
    }
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < d_.rows(); ++i) std::swap(d_(i, a), d_(i, b));
    if (track_) {
      for (std::size_t i = 0; i < v_.rows(); ++i) std::swap(v_(i, a), v_(i, b));
    }
  }

  // row[dst] += c * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const mpz_class& c) {
    for (std::size_t j = 0; j < d_.cols(); ++j) d_(dst, j) += c * d_(src, j);
    if (track_) {
      for (std::size_t j = 0; j < u_.cols(); ++j) u_(dst, j) += c * u_(src, j);
    }
  }

  // col[dst] += c * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const mpz_class& c) {
    for (std::size_t i = 0; i < d_.rows(); ++i) d_(i, dst) += c * d_(i, src);
    if (track_) {
      for (std::size_t i = 0; i < v_.rows(); ++i) v_(i, dst) += c * v_(i, src);
    }
  }

  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < d_.cols(); ++j) d_(r, j) = -d_(r, j);
    if (track_) {
      for (std::size_t j = 0; j < u_.cols(); ++j) u_(r, j) = -u_(r, j);
    }
  }

  IntMatrix d_;
  IntMatrix u_;
  IntMatrix v_;
  bool track_;
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  SmithReducer reducer(a, true);
  reducer.run();
  return reducer.take();
}

std::vector<mpz_class> smith_invariants(const IntMatrix& a) {
  SmithReducer reducer(a, false);
  reducer.run();
  const IntMatrix& d = reducer.diagonal_matrix();
  std::vector<mpz_class> diag;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) diag.push_back(d(i, i));
  return diag;
}

}  // namespace laxbases::linalg
