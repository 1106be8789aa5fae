#include "laxbases/heisenberg.hpp"

#include "laxbases/errors.hpp"
#include "laxbases/exact_rank.hpp"

namespace laxbases::heisenberg {

using linalg::coordinate_of_a;
using linalg::coordinate_of_b;
using linalg::IntMatrix;

KContext::KContext(int g, int k) : g_(g), k_(k) {
  if (g < 1 || k < 1 || k > g) fail(Errc::invalid_input, "K needs 1 <= k <= g");
  for (int i = 1; i <= k; ++i) ambient_.push_back(coordinate_of_a(i));
  for (int i = k + 1; i <= g; ++i) {
    ambient_.push_back(coordinate_of_a(i));
    ambient_.push_back(coordinate_of_b(i));
  }
}

std::string KContext::basis_name(std::size_t j) const {
  const auto c = ambient_coordinate(j);
  return (c % 2 == 0 ? "a_" : "b_") + std::to_string(c / 2 + 1);
}

namespace {

void require_shape(const KContext& ctx, const KElement& x) {
  if (x.w.size() != ctx.dimension()) {
    fail(Errc::invalid_input, "element has " + std::to_string(x.w.size()) + " coordinates, the context has " +
                                  std::to_string(ctx.dimension()));
  }
}

}  // namespace

mpz_class KContext::form(const std::vector<mpz_class>& x, const std::vector<mpz_class>& y) const {
  mpz_class total = 0;
  // The a_1 .. a_k block pairs trivially inside V''; the rest is hyperbolic.
  for (std::size_t j = static_cast<std::size_t>(k_); j + 1 < ambient_.size(); j += 2) {
    total += x[j] * y[j + 1] - x[j + 1] * y[j];
  }
  return total;
}

std::string KElement::to_string() const {
  std::string out = "(" + n.get_str() + ", [";
  for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + w[i].get_str();
  return out + "])";
}

KElement k_identity(const KContext& ctx) { return KElement{0, std::vector<mpz_class>(ctx.dimension(), 0)}; }

KElement k_element(const KContext& ctx, long n, const std::vector<long>& w) {
  KElement x{n, {}};
  for (long c : w) x.w.emplace_back(c);
  require_shape(ctx, x);
  return x;
}

KElement k_multiply(const KElement& x, const KElement& y, const KContext& ctx) {
  require_shape(ctx, x);
  require_shape(ctx, y);
  KElement out{x.n + y.n + ctx.form(x.w, y.w), x.w};
  for (std::size_t i = 0; i < out.w.size(); ++i) out.w[i] += y.w[i];
  return out;
}

KElement k_inverse(const KElement& x, const KContext& ctx) {
  require_shape(ctx, x);
  KElement out{-x.n, x.w};
  for (auto& c : out.w) c = -c;
  return out;
}

KElement k_commutator(const KElement& x, const KElement& y, const KContext& ctx) {
  return k_multiply(k_multiply(x, y, ctx), k_multiply(k_inverse(x, ctx), k_inverse(y, ctx), ctx), ctx);
}

std::vector<mpq_class> abelianization_image(const KElement& x, const KContext& ctx) {
  require_shape(ctx, x);
  if (ctx.k() == ctx.g()) {
    fail(Errc::unsupported_context, "the form vanishes on V'' when k = g, so the centre survives rationally");
  }
  std::vector<mpq_class> out;
  for (const auto& c : x.w) out.emplace_back(c);
  return out;
}

void validate_generator(const KContext& ctx, const IntMatrix& a) {
  const auto n = 2 * static_cast<std::size_t>(ctx.g());
  if (a.rows() != n || a.cols() != n) fail(Errc::invalid_generator, "generator must be 2g x 2g");
  if (!linalg::preserves_symplectic_form(a, linalg::Modulus(0))) {
    fail(Errc::invalid_generator, "generator is not symplectic over Z");
  }
  for (int i = 1; i <= ctx.k(); ++i) {
    const auto col = coordinate_of_a(i);
    for (std::size_t r = 0; r < n; ++r) {
      if (a(r, col) != (r == col ? 1 : 0)) {
        fail(Errc::invalid_generator, "generator moves a_" + std::to_string(i));
      }
    }
  }
  for (std::size_t j = 0; j < ctx.dimension(); ++j) {
    const auto col = ctx.ambient_coordinate(j);
    for (int i = 1; i <= ctx.k(); ++i) {
      if (a(coordinate_of_b(i), col) != 0) {
        fail(Errc::invalid_generator, "generator maps " + ctx.basis_name(j) + " outside V''");
      }
    }
  }
}

std::size_t coinvariant_dimension(const KContext& ctx, const std::vector<IntMatrix>& generators) {
  linalg::SparseIntMatrix displacements;
  displacements.rows = ctx.dimension();
  for (const auto& a : generators) {
    validate_generator(ctx, a);
    for (std::size_t j = 0; j < ctx.dimension(); ++j) {
      const auto col = ctx.ambient_coordinate(j);
      std::vector<std::pair<std::uint32_t, std::int64_t>> entries;
      for (std::size_t r = 0; r < ctx.dimension(); ++r) {
        mpz_class d = a(ctx.ambient_coordinate(r), col) - (r == j ? 1 : 0);
        if (d == 0) continue;
        if (!d.fits_slong_p()) fail(Errc::too_large, "displacement entry does not fit in 64 bits");
        entries.emplace_back(static_cast<std::uint32_t>(r), d.get_si());
      }
      if (!entries.empty()) displacements.columns.push_back(std::move(entries));
    }
  }
  displacements.cols = displacements.columns.size();
  return ctx.dimension() - linalg::exact_rank(displacements);
}

IntMatrix transvection_power(const KContext& ctx, const std::vector<long>& v, long power) {
  const auto n = 2 * static_cast<std::size_t>(ctx.g());
  if (v.size() != n) fail(Errc::invalid_input, "transvection vector must have 2g coordinates");
  // T_v^p = I + p v (Jv)^T because i(v, v) = 0.
  IntMatrix t = IntMatrix::identity(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const long jv = c % 2 == 0 ? v[c + 1] : -v[c - 1];
      t(r, c) += mpz_class(power) * v[r] * jv;
    }
  }
  return t;
}

namespace {

std::vector<long> ambient_vector(const KContext& ctx, std::initializer_list<std::pair<std::size_t, long>> terms) {
  std::vector<long> v(2 * static_cast<std::size_t>(ctx.g()), 0);
  for (auto [coord, c] : terms) v[coord] += c;
  return v;
}

}  // namespace

std::vector<IntMatrix> default_generators(const KContext& ctx, long L) {
  std::vector<IntMatrix> out;
  for (int j = ctx.k() + 1; j <= ctx.g(); ++j) {
    out.push_back(transvection_power(ctx, ambient_vector(ctx, {{coordinate_of_a(j), 1}}), L));
    out.push_back(transvection_power(ctx, ambient_vector(ctx, {{coordinate_of_b(j), 1}}), L));
    out.push_back(transvection_power(ctx, ambient_vector(ctx, {{coordinate_of_a(j), 1}, {coordinate_of_b(j), 1}}), L));
  }
  if (ctx.k() < ctx.g()) {
    const int next = ctx.k() + 1;
    for (int i = 1; i <= ctx.k(); ++i) {
      out.push_back(transvection_power(ctx, ambient_vector(ctx, {{coordinate_of_a(i), 1}, {coordinate_of_a(next), 1}}), L));
      out.push_back(transvection_power(ctx, ambient_vector(ctx, {{coordinate_of_a(i), 1}, {coordinate_of_b(next), 1}}), L));
    }
  }
  return out;
}

std::vector<IntMatrix> enlarged_generators(const KContext& ctx, long L) {
  const auto d = ctx.dimension();
  std::vector<long> digits(d, -1);
  std::vector<IntMatrix> out;
  while (true) {
    bool nonzero = false;
    std::vector<long> v(2 * static_cast<std::size_t>(ctx.g()), 0);
    for (std::size_t j = 0; j < d; ++j) {
      v[ctx.ambient_coordinate(j)] = digits[j];
      nonzero = nonzero || digits[j] != 0;
    }
    if (nonzero) out.push_back(transvection_power(ctx, v, L));
    std::size_t i = d;
    while (i > 0 && digits[i - 1] == 1) digits[--i] = -1;
    if (i == 0) break;
    ++digits[i - 1];
  }
  return out;
}

CoinvariantReport compute_coinvariants(const KContext& ctx, long L) {
  if (L < 1) fail(Errc::invalid_input, "level must be positive");
  CoinvariantReport report;
  report.ambient_dimension = ctx.dimension();
  auto gens = default_generators(ctx, L);
  report.generators_used = gens.size();
  report.dimension = coinvariant_dimension(ctx, gens);
  if (report.dimension != 0) {
    gens = enlarged_generators(ctx, L);
    report.enlarged = true;
    report.generators_used = gens.size();
    report.dimension = coinvariant_dimension(ctx, gens);
  }
  report.proved_zero = report.dimension == 0;
  return report;
}

IntMatrix embedding_matrix(const KContext& ctx, const KElement& x) {
  require_shape(ctx, x);
  if (x.w[0] != 0) fail(Errc::invalid_input, "embedding needs w with zero a_1-coordinate");
  const auto n = 2 * static_cast<std::size_t>(ctx.g());
  std::vector<mpz_class> v(n, 0);
  for (std::size_t j = 0; j < ctx.dimension(); ++j) v[ctx.ambient_coordinate(j)] = x.w[j];
  v[coordinate_of_a(1)] += x.n;

  IntMatrix m = IntMatrix::identity(n);
  for (std::size_t r = 0; r < n; ++r) m(r, coordinate_of_b(1)) += v[r];
  for (std::size_t c = 0; c < n; ++c) {
    if (c == coordinate_of_a(1) || c == coordinate_of_b(1)) continue;
    // i(v, e_c) is -v_b if e_c = a, +v_a if e_c = b for the same block.
    const mpz_class pairing = c % 2 == 0 ? mpz_class(-v[c + 1]) : mpz_class(v[c - 1]);
    m(coordinate_of_a(1), c) += pairing;
  }
  return m;
}

}  // namespace laxbases::heisenberg
