#include "laxbases/zl_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "laxbases/errors.hpp"

namespace laxbases::linalg {

namespace {

constexpr std::int64_t kMaxModulus = std::numeric_limits<std::int32_t>::max();

std::int64_t checked_narrow(int128 x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min()) {
    fail(Errc::invalid_input, "integer coordinate overflow");
  }
  return static_cast<std::int64_t>(x);
}

std::int64_t abs_gcd(std::int64_t a, std::int64_t b) {
  return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

// Bareiss elimination on a small square matrix; T is int128 or mpz_class.
template <class T>
T bareiss_determinant(std::vector<T> m, std::size_t n) {
  if (n == 0) return T(1);
  T sign = 1;
  T prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k * n + k] == 0) {
      std::size_t swap_row = n;
      for (std::size_t i = k + 1; i < n; ++i) {
        if (m[i * n + k] != 0) {
          swap_row = i;
          break;
        }
      }
      if (swap_row == n) return T(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[swap_row * n + j]);
      sign = -sign;
    }
    const T pivot = m[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i * n + j] = (m[i * n + j] * pivot - m[i * n + k] * m[k * n + j]) / prev;
      }
      m[i * n + k] = 0;
    }
    prev = pivot;
  }
  return sign * m[(n - 1) * n + (n - 1)];
}

// Calls visit(columns) for each k-subset of {0..n-1} in lexicographic order;
// stops early when visit returns false.
template <class Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    if (!visit(std::span<const std::size_t>(idx))) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

void check_family(std::span<const ZLVector> vs) {
  if (vs.empty()) fail(Errc::invalid_input, "summand test needs at least one vector");
  for (const auto& v : vs) require_same_shape(vs.front(), v);
  if (vs.size() > vs.front().size()) {
    fail(Errc::invalid_input, "more vectors than the rank of the ambient module");
  }
}

// Iterates |minor| over all maximal minors; visit returns false to stop.
template <class Visit>
void for_each_maximal_minor(std::span<const ZLVector> vs, Visit&& visit) {
  const std::size_t k = vs.size();
  const std::size_t n = vs.front().size();
  std::int64_t max_abs = 0;
  for (const auto& v : vs) {
    for (auto c : v.coords()) max_abs = std::max(max_abs, c < 0 ? -c : c);
  }
  // Hadamard-style bound: k * log2(max) + log2(k!) must fit comfortably in 127 bits.
  const double bits = static_cast<double>(k) * std::log2(static_cast<double>(max_abs) + 1.0) +
                      std::lgamma(static_cast<double>(k) + 1.0) / std::log(2.0);
  if (bits < 110.0) {
    std::vector<int128> m(k * k);
    for_each_subset(n, k, [&](std::span<const std::size_t> cols) {
      for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) m[r * k + c] = vs[r][cols[c]];
      }
      int128 d = bareiss_determinant<int128>(m, k);
      if (d < 0) d = -d;
      mpz_class z;
      // Minors here are bounded well below 2^110, so two 64-bit halves suffice.
      const auto hi = static_cast<std::uint64_t>(d >> 64);
      const auto lo = static_cast<std::uint64_t>(d);
      z = mpz_class(static_cast<unsigned long>(hi));
      z <<= 64;
      z += mpz_class(static_cast<unsigned long>(lo));
      return visit(z);
    });
    return;
  }
  std::vector<mpz_class> m(k * k);
  for_each_subset(n, k, [&](std::span<const std::size_t> cols) {
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) m[r * k + c] = static_cast<long>(vs[r][cols[c]]);
    }
    mpz_class d = bareiss_determinant<mpz_class>(m, k);
    return visit(mpz_class(abs(d)));
  });
}

}  // namespace

Modulus::Modulus(std::int64_t value) : value_(value) {
  if (value < 0) fail(Errc::invalid_input, "modulus must be non-negative");
  if (value == 1) fail(Errc::invalid_input, "modulus 1 (the zero ring) is not supported");
  if (value > kMaxModulus) fail(Errc::invalid_input, "modulus too large");
}

std::int64_t Modulus::reduce(std::int64_t x) const noexcept {
  if (value_ == 0) return x;
  std::int64_t r = x % value_;
  return r < 0 ? r + value_ : r;
}

std::int64_t Modulus::reduce_wide(int128 x) const {
  if (value_ == 0) return checked_narrow(x);
  int128 r = x % value_;
  if (r < 0) r += value_;
  return static_cast<std::int64_t>(r);
}

bool Modulus::is_unit(std::int64_t x) const noexcept {
  if (value_ == 0) return x == 1 || x == -1;
  return std::gcd(reduce(x), value_) == 1;
}

ZLVector::ZLVector(int genus, Modulus modulus, std::vector<std::int64_t> coords)
    : genus_(genus), modulus_(modulus), coords_(std::move(coords)) {
  if (genus < 1) fail(Errc::invalid_input, "genus must be positive");
  if (coords_.size() != 2 * static_cast<std::size_t>(genus)) {
    fail(Errc::dimension_mismatch, "expected " + std::to_string(2 * genus) + " coordinates, got " +
                                       std::to_string(coords_.size()));
  }
  for (auto& c : coords_) c = modulus_.reduce(c);
}

ZLVector ZLVector::zero(int genus, Modulus modulus) {
  return ZLVector(genus, modulus, std::vector<std::int64_t>(2 * static_cast<std::size_t>(std::max(genus, 0))));
}

ZLVector ZLVector::basis_a(int genus, Modulus modulus, int i) {
  if (i < 1 || i > genus) fail(Errc::invalid_input, "basis index out of range");
  std::vector<std::int64_t> c(2 * static_cast<std::size_t>(genus));
  c[coordinate_of_a(i)] = 1;
  return ZLVector(genus, modulus, std::move(c));
}

ZLVector ZLVector::basis_b(int genus, Modulus modulus, int i) {
  if (i < 1 || i > genus) fail(Errc::invalid_input, "basis index out of range");
  std::vector<std::int64_t> c(2 * static_cast<std::size_t>(genus));
  c[coordinate_of_b(i)] = 1;
  return ZLVector(genus, modulus, std::move(c));
}

bool ZLVector::is_zero() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(), [](std::int64_t c) { return c == 0; });
}

ZLVector ZLVector::scaled(std::int64_t c) const {
  std::vector<std::int64_t> out(coords_.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = modulus_.reduce_wide(static_cast<int128>(coords_[i]) * c);
  }
  return ZLVector(genus_, modulus_, std::move(out));
}

ZLVector ZLVector::operator-() const { return scaled(-1); }

ZLVector operator+(const ZLVector& x, const ZLVector& y) {
  require_same_shape(x, y);
  std::vector<std::int64_t> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = x.modulus_.reduce_wide(static_cast<int128>(x.coords_[i]) + y.coords_[i]);
  }
  return ZLVector(x.genus_, x.modulus_, std::move(out));
}

ZLVector operator-(const ZLVector& x, const ZLVector& y) { return x + (-y); }

std::strong_ordering operator<=>(const ZLVector& x, const ZLVector& y) {
  if (auto c = x.genus_ <=> y.genus_; c != 0) return c;
  if (auto c = x.modulus_ <=> y.modulus_; c != 0) return c;
  return std::lexicographical_compare_three_way(x.coords_.begin(), x.coords_.end(), y.coords_.begin(),
                                                y.coords_.end());
}

std::string ZLVector::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out << ',';
    out << coords_[i];
  }
  out << ')';
  return out.str();
}

void require_same_shape(const ZLVector& x, const ZLVector& y) {
  if (x.genus() != y.genus() || x.modulus() != y.modulus()) {
    fail(Errc::dimension_mismatch, "vectors " + x.to_string() + " and " + y.to_string() +
                                       " live in different modules (g or L differ)");
  }
}

std::int64_t intersection_form(const ZLVector& x, const ZLVector& y) {
  require_same_shape(x, y);
  int128 total = 0;
  for (int i = 1; i <= x.genus(); ++i) {
    const auto a = coordinate_of_a(i);
    const auto b = coordinate_of_b(i);
    total += static_cast<int128>(x[a]) * y[b] - static_cast<int128>(x[b]) * y[a];
  }
  return x.modulus().reduce_wide(total);
}

bool is_primitive(const ZLVector& v) {
  std::int64_t g = v.modulus().value();
  for (auto c : v.coords()) g = abs_gcd(g, c);
  if (v.modulus().is_integers()) return g == 1;
  return !v.is_zero() && g == 1;
}

std::string LaxVector::to_string() const { return "+-" + rep_.to_string(); }

LaxVector canonical_lax(const ZLVector& v) {
  if (!is_primitive(v)) fail(Errc::invalid_input, "lax vectors need a primitive vector, got " + v.to_string());
  ZLVector neg = -v;
  return LaxVector(neg < v ? std::move(neg) : v);
}

std::size_t LaxVectorHash::operator()(const LaxVector& v) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto c : v.rep().coords()) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h ^ static_cast<std::uint64_t>(v.modulus().value()) * 31);
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.begin()->size() : 0;
  IntMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) fail(Errc::dimension_mismatch, "ragged matrix literal");
    std::size_t j = 0;
    for (long x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

IntMatrix IntMatrix::from_row_vectors(std::span<const ZLVector> rows) {
  if (rows.empty()) return IntMatrix();
  IntMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_same_shape(rows.front(), rows[i]);
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = static_cast<long>(rows[i][j]);
  }
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

IntMatrix IntMatrix::submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
  IntMatrix s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
  }
  return s;
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols_ != y.rows_) fail(Errc::dimension_mismatch, "matrix product shape mismatch");
  IntMatrix p(x.rows_, y.cols_);
  for (std::size_t i = 0; i < x.rows_; ++i) {
    for (std::size_t k = 0; k < x.cols_; ++k) {
      const mpz_class& xik = x(i, k);
      if (xik == 0) continue;
      for (std::size_t j = 0; j < y.cols_; ++j) p(i, j) += xik * y(k, j);
    }
  }
  return p;
}

bool operator==(const IntMatrix& x, const IntMatrix& y) {
  return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) out << ',';
    out << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out << ',';
      out << (*this)(i, j).get_str();
    }
    out << ']';
  }
  out << ']';
  return out.str();
}

mpz_class determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) fail(Errc::dimension_mismatch, "determinant of a non-square matrix");
  std::vector<mpz_class> m(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m[i * a.cols() + j] = a(i, j);
  }
  return bareiss_determinant<mpz_class>(std::move(m), a.rows());
}

mpz_class maximal_minor_gcd(std::span<const ZLVector> vs) {
  check_family(vs);
  mpz_class g = 0;
  for_each_maximal_minor(vs, [&](const mpz_class& minor) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), minor.get_mpz_t());
    return true;
  });
  return g;
}

bool is_free_summand(std::span<const ZLVector> vs) {
  check_family(vs);
  const auto L = vs.front().modulus();
  mpz_class g = static_cast<long>(L.value());
  bool found = false;
  for_each_maximal_minor(vs, [&](const mpz_class& minor) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), minor.get_mpz_t());
    if (g == 1) {
      found = true;
      return false;
    }
    return true;
  });
  return found;
}

IntMatrix symplectic_form(int genus) {
  IntMatrix j(2 * static_cast<std::size_t>(genus), 2 * static_cast<std::size_t>(genus));
  for (int i = 1; i <= genus; ++i) {
    j(coordinate_of_a(i), coordinate_of_b(i)) = 1;
    j(coordinate_of_b(i), coordinate_of_a(i)) = -1;
  }
  return j;
}

bool preserves_symplectic_form(const IntMatrix& m, Modulus modulus) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) {
    fail(Errc::invalid_input, "symplectic test needs a non-empty 2g x 2g matrix");
  }
  const int genus = static_cast<int>(m.rows() / 2);
  const IntMatrix j = symplectic_form(genus);
  const IntMatrix gram = m.transpose() * j * m;
  const mpz_class L = static_cast<long>(modulus.value());
  for (std::size_t r = 0; r < gram.rows(); ++r) {
    for (std::size_t c = 0; c < gram.cols(); ++c) {
      mpz_class diff = gram(r, c) - j(r, c);
      if (L == 0) {
        if (diff != 0) return false;
      } else if (mpz_divisible_p(diff.get_mpz_t(), L.get_mpz_t()) == 0) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace laxbases::linalg
