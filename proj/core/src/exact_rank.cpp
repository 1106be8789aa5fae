#include "laxbases/exact_rank.hpp"

#include <limits>
#include <numeric>
#include <unordered_map>

#include <gmpxx.h>

#include "laxbases/errors.hpp"

namespace laxbases::linalg {

namespace {

struct Overflow {};

// Coefficient policies: checked 64-bit arithmetic and GMP integers.
struct Checked64 {
  using value_type = std::int64_t;
  static value_type from(std::int64_t x) { return x; }
  static value_type mul(value_type a, value_type b) {
    value_type r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static value_type sub(value_type a, value_type b) {
    value_type r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static bool divides(value_type d, value_type x) { return x % d == 0; }
  static value_type div(value_type x, value_type d) { return x / d; }
  static value_type gcd(value_type a, value_type b) {
    if (a == std::numeric_limits<value_type>::min() || b == std::numeric_limits<value_type>::min()) throw Overflow{};
    return std::gcd(a, b);
  }
  static bool is_zero(value_type x) { return x == 0; }
};

struct Big {
  using value_type = mpz_class;
  static value_type from(std::int64_t x) { return mpz_class(static_cast<long>(x)); }
  static value_type mul(const value_type& a, const value_type& b) { return a * b; }
  static value_type sub(const value_type& a, const value_type& b) { return a - b; }
  static bool divides(const value_type& d, const value_type& x) {
    return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
  }
  static value_type div(const value_type& x, const value_type& d) { return x / d; }
  static value_type gcd(const value_type& a, const value_type& b) {
    mpz_class r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
  }
  static bool is_zero(const value_type& x) { return x == 0; }
};

template <class P>
using Column = std::vector<std::pair<std::uint32_t, typename P::value_type>>;

// c := alpha * c - beta * p, merged by row; drops zeros.
template <class P>
Column<P> combine(const Column<P>& c, const typename P::value_type& alpha, const Column<P>& p,
                  const typename P::value_type& beta) {
  Column<P> out;
  out.reserve(c.size() + p.size());
  std::size_t i = 0, j = 0;
  while (i < c.size() || j < p.size()) {
    if (j == p.size() || (i < c.size() && c[i].first < p[j].first)) {
      auto v = P::mul(alpha, c[i].second);
      if (!P::is_zero(v)) out.emplace_back(c[i].first, std::move(v));
      ++i;
    } else if (i == c.size() || p[j].first < c[i].first) {
      auto v = P::sub(typename P::value_type(0), P::mul(beta, p[j].second));
      if (!P::is_zero(v)) out.emplace_back(p[j].first, std::move(v));
      ++j;
    } else {
      auto v = P::sub(P::mul(alpha, c[i].second), P::mul(beta, p[j].second));
      if (!P::is_zero(v)) out.emplace_back(c[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

template <class P>
void remove_content(Column<P>& c) {
  typename P::value_type g = 0;
  for (const auto& [row, v] : c) {
    g = P::gcd(g, v);
    if (g == 1) return;
  }
  if (P::is_zero(g)) return;
  for (auto& entry : c) entry.second = P::div(entry.second, g);
}

// Standard pivot-on-lowest-row column reduction. Scaling a column by the
// non-zero pivot of another column never changes the rational rank.
template <class P>
std::size_t reduce_columns(const SparseIntMatrix& m) {
  std::unordered_map<std::uint32_t, Column<P>> pivots;
  pivots.reserve(m.cols);
  for (const auto& raw : m.columns) {
    Column<P> c;
    c.reserve(raw.size());
    for (const auto& [row, v] : raw) {
      if (v != 0) c.emplace_back(row, P::from(v));
    }
    while (!c.empty()) {
      auto it = pivots.find(c.back().first);
      if (it == pivots.end()) break;
      const Column<P>& p = it->second;
      const auto& a = c.back().second;
      const auto& b = p.back().second;
      if (P::divides(b, a)) {
        c = combine<P>(c, typename P::value_type(1), p, P::div(a, b));
      } else {
        c = combine<P>(c, b, p, a);
        remove_content<P>(c);
      }
    }
    if (!c.empty()) {
      remove_content<P>(c);
      const auto low = c.back().first;
      pivots.emplace(low, std::move(c));
    }
  }
  return pivots.size();
}

void validate(const SparseIntMatrix& m) {
  if (m.columns.size() != m.cols) fail(Errc::dimension_mismatch, "sparse matrix column count mismatch");
  for (const auto& col : m.columns) {
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (col[i].first >= m.rows) fail(Errc::dimension_mismatch, "sparse matrix row index out of range");
      if (i > 0 && col[i - 1].first >= col[i].first) {
        fail(Errc::invalid_input, "sparse matrix rows must be strictly increasing");
      }
    }
  }
}

}  // namespace

std::size_t exact_rank(const SparseIntMatrix& m) {
  validate(m);
  try {
    return reduce_columns<Checked64>(m);
  } catch (const Overflow&) {
    return reduce_columns<Big>(m);
  }
}

std::size_t modular_rank(const SparseIntMatrix& m, std::uint32_t prime) {
  validate(m);
  if (prime < 2) fail(Errc::invalid_input, "modular rank needs a prime");
  const std::uint64_t p = prime;
  auto reduce = [p](std::int64_t x) {
    std::int64_t r = x % static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
  };
  auto inverse = [p](std::uint64_t a) {
    std::uint64_t result = 1, base = a, e = p - 2;
    while (e) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return result;
  };
  using Col = std::vector<std::pair<std::uint32_t, std::uint64_t>>;
  std::unordered_map<std::uint32_t, Col> pivots;
  for (const auto& raw : m.columns) {
    Col c;
    for (const auto& [row, v] : raw) {
      if (auto r = reduce(v); r != 0) c.emplace_back(row, r);
    }
    while (!c.empty()) {
      auto it = pivots.find(c.back().first);
      if (it == pivots.end()) break;
      const Col& piv = it->second;  // normalized: lowest entry is 1
      const std::uint64_t factor = c.back().second;
      Col out;
      std::size_t i = 0, j = 0;
      while (i < c.size() || j < piv.size()) {
        if (j == piv.size() || (i < c.size() && c[i].first < piv[j].first)) {
          out.push_back(c[i++]);
        } else {
          std::uint64_t v = (p - factor * piv[j].second % p) % p;
          if (i < c.size() && c[i].first == piv[j].first) v = (v + c[i++].second) % p;
          if (v) out.emplace_back(piv[j].first, v);
          ++j;
        }
      }
      c = std::move(out);
    }
    if (!c.empty()) {
      const std::uint64_t inv = inverse(c.back().second);
      for (auto& e : c) e.second = e.second * inv % p;
      pivots.emplace(c.back().first, std::move(c));
    }
  }
  return pivots.size();
}

}  // namespace laxbases::linalg
