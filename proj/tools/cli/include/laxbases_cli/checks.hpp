#pragma once

// Cross-checks of library results against the brute-force oracles. Each
// returns a witness describing the first disagreement, or nullopt.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "laxbases/bases_complex.hpp"
#include "laxbases/heisenberg.hpp"
#include "laxbases/zl_linalg.hpp"
#include "laxbases_cli/report.hpp"
#include "laxbases_oracles/oracles.hpp"

namespace laxbases::cli {

oracle::Vec to_vec(const linalg::ZLVector& v);
Json to_json(const linalg::IntMatrix& m);
Json to_json(std::span<const linalg::LaxVector> vs);

std::optional<Json> primitive_mismatch(const linalg::ZLVector& v);
std::optional<Json> summand_mismatch(std::span<const linalg::ZLVector> vs);

// U A V = D, the divisibility chain, unimodularity and d_1 ... d_k equal to
// the gcd of the k x k minors.
std::optional<Json> snf_violation(const linalg::IntMatrix& a);

// Core reduced Betti numbers of the closure of the facets against the dense
// oracle and against the expected values.
std::optional<Json> betti_mismatch(const std::vector<std::vector<std::uint32_t>>& facets,
                                   const std::vector<std::size_t>& expected);

// Runs reduce_vertex and re-checks rank drop, isotropy with the context and
// the summand condition through the oracles.
std::optional<Json> reduction_violation(const bases::BasesSpec& spec, std::span<const linalg::LaxVector> context,
                                        const linalg::LaxVector& v_x, const linalg::LaxVector& pivot,
                                        const bases::RhoChoice& rho);

// [(0, w1), (0, w2)] = (2 i(w1, w2), 0) with the pairing evaluated directly.
std::optional<Json> commutator_mismatch(const heisenberg::KContext& ctx, const std::vector<long>& w1,
                                        const std::vector<long>& w2);

// Independent vertex count: closed form for the full complex, brute force for
// small link or W instances. Returns (value, oracle name).
std::optional<std::pair<std::string, std::string>> expected_vertex_count(const bases::BasesSpec& spec);

}  // namespace laxbases::cli
