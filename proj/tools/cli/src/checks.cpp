#include "laxbases_cli/checks.hpp"

#include "laxbases/errors.hpp"
#include "laxbases/simplicial.hpp"
#include "laxbases/smith.hpp"

namespace laxbases::cli {

using linalg::IntMatrix;
using linalg::LaxVector;
using linalg::ZLVector;

oracle::Vec to_vec(const ZLVector& v) { return {v.coords().begin(), v.coords().end()}; }

Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).get_str());
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(std::span<const LaxVector> vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(v.to_string());
  return out;
}

namespace {

std::vector<std::vector<mpz_class>> to_rows(const IntMatrix& m) {
  std::vector<std::vector<mpz_class>> rows(m.rows(), std::vector<mpz_class>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c);
  }
  return rows;
}

Json family_json(std::span<const ZLVector> vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(v.to_string());
  return out;
}

}  // namespace

std::optional<Json> primitive_mismatch(const ZLVector& v) {
  const bool core = linalg::is_primitive(v);
  const bool brute = oracle::brute_primitive(to_vec(v), v.modulus().value());
  if (core == brute) return std::nullopt;
  return Json{{"vector", v.to_string()}, {"is_primitive", core}, {"brute_force", brute}};
}

std::optional<Json> summand_mismatch(std::span<const ZLVector> vs) {
  if (vs.empty()) return std::nullopt;
  const bool core = linalg::is_free_summand(vs);
  std::vector<oracle::Vec> family;
  for (const auto& v : vs) family.push_back(to_vec(v));
  const bool brute = oracle::brute_free_summand(family, vs.front().modulus().value());
  if (core == brute) return std::nullopt;
  return Json{{"family", family_json(vs)}, {"is_free_summand", core}, {"retraction_search", brute}};
}

std::optional<Json> snf_violation(const IntMatrix& a) {
  const auto snf = linalg::smith_normal_form(a);
  auto witness = [&](const std::string& what) {
    return Json{{"violation", what}, {"A", to_json(a)}, {"U", to_json(snf.U)}, {"D", to_json(snf.D)},
                {"V", to_json(snf.V)}};
  };
  if (!(snf.U * a * snf.V == snf.D)) return witness("U A V != D");
  const auto m = a.rows();
  const auto n = a.cols();
  std::vector<mpz_class> diag;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (r != c && snf.D(r, c) != 0) return witness("D is not diagonal");
      if (r == c) diag.push_back(snf.D(r, c));
    }
  }
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] < 0) return witness("negative invariant factor");
    if (i + 1 < diag.size()) {
      if (diag[i] == 0 ? diag[i + 1] != 0 : diag[i + 1] % diag[i] != 0) return witness("divisibility chain broken");
    }
  }
  const auto du = oracle::leibniz_det(to_rows(snf.U));
  const auto dv = oracle::leibniz_det(to_rows(snf.V));
  if (abs(du) != 1 || abs(dv) != 1) return witness("transform is not unimodular");
  const auto rows = to_rows(a);
  mpz_class product = 1;
  for (std::size_t k = 1; k <= diag.size(); ++k) {
    product *= diag[k - 1];
    if (product != oracle::minor_gcd(rows, k)) return witness("d_1..d_" + std::to_string(k) + " != gcd of minors");
  }
  return std::nullopt;
}

std::optional<Json> betti_mismatch(const std::vector<std::vector<std::uint32_t>>& facets,
                                   const std::vector<std::size_t>& expected) {
  const auto x = topology::SimplicialComplex::from_facets(facets);
  const auto core = topology::reduced_betti(x, x.dimension()).reduced_betti;
  const auto dense = oracle::reduced_betti_dense(facets);
  if (core == dense && core == expected) return std::nullopt;
  return Json{{"facets", facets}, {"core", core}, {"dense_oracle", dense}, {"expected", expected}};
}

std::optional<Json> reduction_violation(const bases::BasesSpec& spec, std::span<const LaxVector> context,
                                        const LaxVector& v_x, const LaxVector& pivot, const bases::RhoChoice& rho) {
  const auto result = bases::reduce_vertex(spec, context, v_x, pivot, rho);
  const auto R = bases::rho_rank(pivot, rho);
  const auto L = spec.L;
  auto witness = [&](const std::string& what) {
    return Json{{"violation", what},      {"spec", spec.to_string()},    {"rho", rho.to_string()},
                {"context", to_json(context)}, {"v_x", v_x.to_string()}, {"pivot", pivot.to_string()},
                {"result", result.to_string()}};
  };
  const auto c = result.rep()[rho.coordinate()];
  if (std::min(c, (L - c) % L) >= R) return witness("rank did not drop below R");
  std::vector<oracle::Vec> family;
  for (const auto& a : bases::constraint_vectors(spec)) family.push_back(to_vec(a));
  const auto r = to_vec(result.rep());
  for (const auto& u : context) {
    if (u == result) return witness("result coincides with a context vertex");
    if (oracle::pairing(to_vec(u.rep()), r, L) != 0) return witness("result is not isotropic to the context");
    family.push_back(to_vec(u.rep()));
  }
  family.push_back(r);
  if (!oracle::brute_free_summand(family, L)) return witness("family is not a free summand (retraction search)");
  std::vector<LaxVector> simplex(context.begin(), context.end());
  simplex.push_back(result);
  if (!bases::is_simplex(spec, simplex)) return witness("result does not span a simplex with the context");
  return std::nullopt;
}

std::optional<Json> commutator_mismatch(const heisenberg::KContext& ctx, const std::vector<long>& w1,
                                        const std::vector<long>& w2) {
  const auto x = heisenberg::k_element(ctx, 0, w1);
  const auto y = heisenberg::k_element(ctx, 0, w2);
  const auto got = heisenberg::k_commutator(x, y, ctx);
  // Pairing on the ambient coordinates, blocks (a_j, b_j).
  std::vector<long> ax(2 * static_cast<std::size_t>(ctx.g()), 0), ay(ax.size(), 0);
  for (std::size_t j = 0; j < ctx.dimension(); ++j) {
    ax[ctx.ambient_coordinate(j)] = w1[j];
    ay[ctx.ambient_coordinate(j)] = w2[j];
  }
  mpz_class pairing = 0;
  for (std::size_t j = 0; j + 1 < ax.size(); j += 2) {
    pairing += mpz_class(ax[j]) * ay[j + 1] - mpz_class(ax[j + 1]) * ay[j];
  }
  heisenberg::KElement expected{2 * pairing, std::vector<mpz_class>(ctx.dimension(), 0)};
  if (got == expected) return std::nullopt;
  return Json{{"w1", w1}, {"w2", w2}, {"commutator", got.to_string()}, {"expected", expected.to_string()}};
}

std::optional<std::pair<std::string, std::string>> expected_vertex_count(const bases::BasesSpec& spec) {
  const auto n = 2 * static_cast<std::size_t>(spec.g);
  if (spec.delta_k == 0 && !spec.restrict_W) {
    return std::pair{oracle::lax_primitive_count(n, spec.L).get_str(),
                     "closed form L^n prod_{p|L}(1 - p^-n), halved for L > 2"};
  }
  mpz_class total;
  mpz_ui_pow_ui(total.get_mpz_t(), static_cast<unsigned long>(spec.L), n);
  if (total > 1296) return std::nullopt;
  std::vector<oracle::Vec> constraints;
  for (int j = 1; j <= spec.delta_k; ++j) {
    oracle::Vec a(n, 0);
    a[2 * static_cast<std::size_t>(j - 1)] = 1;
    constraints.push_back(a);
  }
  const auto L = spec.L;
  std::size_t count = 0;
  oracle::for_each_vector(n, L, [&](const oracle::Vec& v) {
    if (spec.restrict_W && v[n - 1] != 0) return true;
    if (!oracle::brute_primitive(v, L)) return true;
    for (const auto& a : constraints) {
      oracle::Vec neg(n);
      for (std::size_t i = 0; i < n; ++i) neg[i] = oracle::mod(-a[i], L);
      if (v == a || v == neg || oracle::pairing(v, a, L) != 0) return true;
    }
    auto family = constraints;
    family.push_back(v);
    if (oracle::brute_free_summand(family, L)) ++count;
    return true;
  });
  if (L > 2) count /= 2;
  return std::pair{std::to_string(count), "exhaustive brute-force enumeration"};
}

}  // namespace laxbases::cli
