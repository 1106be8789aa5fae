#pragma once

// Reference implementations used to cross-check the library. They work on
// plain integer vectors and never call into laxbases::core, so a bug in the
// library cannot hide behind the same bug here. Everything is brute force
// and only meant for small instances.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace laxbases::oracle {

using Vec = std::vector<std::int64_t>;
using Mat = std::vector<std::vector<std::int64_t>>;

inline std::int64_t mod(std::int64_t x, std::int64_t L) {
  const auto r = x % L;
  return r < 0 ? r + L : r;
}

inline bool is_unit(std::int64_t c, std::int64_t L) { return std::gcd(mod(c, L), L) == 1; }

// Odometer over (Z_L)^n; calls f on each vector, stops early if f returns false.
template <class F>
void for_each_vector(std::size_t n, std::int64_t L, F&& f) {
  Vec v(n, 0);
  while (true) {
    if (!f(static_cast<const Vec&>(v))) return;
    std::size_t i = n;
    while (i > 0 && v[i - 1] == L - 1) v[--i] = 0;
    if (i == 0) return;
    ++v[i - 1];
  }
}

// sum over blocks of x_a y_b - x_b y_a, coordinates (a_1, b_1, a_2, b_2, ...).
inline std::int64_t pairing(const Vec& x, const Vec& y, std::int64_t L) {
  std::int64_t s = 0;
  for (std::size_t j = 0; j + 1 < x.size(); j += 2) s += x[j] * y[j + 1] - x[j + 1] * y[j];
  return mod(s, L);
}

inline std::int64_t dot(const Vec& x, const Vec& y, std::int64_t L) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s = mod(s + mod(x[i], L) * mod(y[i], L), L);
  return s;
}

// Nonzero and not of the form c w with c a non-unit.
inline bool brute_primitive(const Vec& v, std::int64_t L) {
  Vec r(v.size());
  std::transform(v.begin(), v.end(), r.begin(), [L](std::int64_t x) { return mod(x, L); });
  if (std::all_of(r.begin(), r.end(), [](std::int64_t x) { return x == 0; })) return false;
  for (std::int64_t c = 0; c < L; ++c) {
    if (is_unit(c, L)) continue;
    bool divisible = false;
    for_each_vector(r.size(), L, [&](const Vec& w) {
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (mod(c * w[i], L) != r[i]) return true;
      }
      divisible = true;
      return false;
    });
    if (divisible) return false;
  }
  return true;
}

// span(vs) is free with basis vs and has a complement iff there are linear
// forms p_i with p_i(v_j) = delta_ij. Each form is searched for separately.
inline bool brute_free_summand(const std::vector<Vec>& vs, std::int64_t L) {
  if (vs.empty()) return true;
  const auto n = vs.front().size();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    bool found = false;
    for_each_vector(n, L, [&](const Vec& p) {
      for (std::size_t j = 0; j < vs.size(); ++j) {
        if (dot(p, vs[j], L) != (i == j ? 1 : 0)) return true;
      }
      found = true;
      return false;
    });
    if (!found) return false;
  }
  return true;
}

// Number of lax primitive vectors in (Z_L)^n: L^n prod_{p | L} (1 - p^-n),
// halved for L > 2 where v != -v.
inline mpz_class lax_primitive_count(std::size_t n, std::int64_t L) {
  mpz_class count;
  mpz_ui_pow_ui(count.get_mpz_t(), static_cast<unsigned long>(L), n);
  std::int64_t rest = L;
  for (std::int64_t p = 2; p <= rest; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    mpz_class pn;
    mpz_ui_pow_ui(pn.get_mpz_t(), static_cast<unsigned long>(p), n);
    count = count / pn * (pn - 1);
  }
  return L > 2 ? mpz_class(count / 2) : count;
}

// Determinant by the Leibniz expansion over all permutations.
inline mpz_class leibniz_det(const std::vector<std::vector<mpz_class>>& a) {
  const auto n = a.size();
  if (n == 0) return 1;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  mpz_class total = 0;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    }
    mpz_class term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n && term != 0; ++i) term *= a[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(std::min(k, n)), true);
  if (k > n) return out;
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (pick[i]) s.push_back(i);
    }
    out.push_back(std::move(s));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

// gcd of all k x k minors (0 when k exceeds either dimension).
inline mpz_class minor_gcd(const std::vector<std::vector<mpz_class>>& a, std::size_t k) {
  const auto rows = a.size();
  const auto cols = rows ? a.front().size() : 0;
  if (k == 0) return 1;
  mpz_class g = 0;
  for (const auto& rs : subsets(rows, k)) {
    for (const auto& cs : subsets(cols, k)) {
      std::vector<std::vector<mpz_class>> m(k, std::vector<mpz_class>(k));
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) m[i][j] = a[rs[i]][cs[j]];
      }
      mpz_class d = leibniz_det(m);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    }
  }
  return g;
}

// Rank over Q by dense Gauss-Jordan elimination on rationals.
inline std::size_t rational_rank(std::vector<std::vector<mpq_class>> a) {
  std::size_t rank = 0;
  const auto rows = a.size();
  const auto cols = rows ? a.front().size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const mpq_class f = a[r][c] / a[rank][c];
      for (std::size_t j = c; j < cols; ++j) a[r][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Rank over F_p of a sparse matrix given as columns of (row, value) pairs.
// Never exceeds the rational rank.
inline std::size_t rank_mod_p(const std::vector<std::map<std::size_t, std::int64_t>>& columns, std::int64_t p) {
  auto inverse = [p](std::int64_t x) {
    std::int64_t result = 1, base = mod(x, p), e = p - 2;
    while (e > 0) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return result;
  };
  std::map<std::size_t, std::map<std::size_t, std::int64_t>> pivots;  // pivot row -> reduced column
  std::size_t rank = 0;
  for (auto col : columns) {
    for (auto it = col.begin(); it != col.end();) {
      if (mod(it->second, p) == 0) {
        it = col.erase(it);
      } else {
        it->second = mod(it->second, p);
        ++it;
      }
    }
    while (!col.empty()) {
      const auto lead = col.rbegin()->first;
      auto found = pivots.find(lead);
      if (found == pivots.end()) {
        pivots.emplace(lead, std::move(col));
        ++rank;
        break;
      }
      const auto& piv = found->second;
      const auto f = col.rbegin()->second * inverse(piv.rbegin()->second) % p;
      for (const auto& [r, x] : piv) {
        auto& y = col[r];
        y = mod(y - f * x, p);
        if (y == 0) col.erase(r);
      }
    }
  }
  return rank;
}

// All faces of the given facets, grouped by dimension.
inline std::vector<std::vector<std::vector<std::uint32_t>>> close_facets(
    const std::vector<std::vector<std::uint32_t>>& facets) {
  std::set<std::vector<std::uint32_t>> all;
  for (auto f : facets) {
    std::sort(f.begin(), f.end());
    const auto n = f.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<std::uint32_t> face;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1) face.push_back(f[i]);
      }
      all.insert(face);
    }
  }
  std::vector<std::vector<std::vector<std::uint32_t>>> by_dim;
  for (const auto& s : all) {
    if (by_dim.size() < s.size()) by_dim.resize(s.size());
    by_dim[s.size() - 1].push_back(s);
  }
  return by_dim;
}

// Reduced rational Betti numbers from dense boundary matrices.
inline std::vector<std::size_t> reduced_betti_dense(const std::vector<std::vector<std::uint32_t>>& facets) {
  const auto faces = close_facets(facets);
  const auto top = faces.size();
  std::vector<std::size_t> ranks(top + 1, 0);  // ranks[d] = rank of d_d
  if (top > 0) ranks[0] = 1;
  for (std::size_t d = 1; d < top; ++d) {
    std::map<std::vector<std::uint32_t>, std::size_t> row_of;
    for (std::size_t i = 0; i < faces[d - 1].size(); ++i) row_of[faces[d - 1][i]] = i;
    std::vector<std::vector<mpq_class>> m(faces[d - 1].size(), std::vector<mpq_class>(faces[d].size(), 0));
    for (std::size_t c = 0; c < faces[d].size(); ++c) {
      const auto& s = faces[d][c];
      for (std::size_t i = 0; i < s.size(); ++i) {
        auto face = s;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        m[row_of.at(face)][c] = i % 2 ? -1 : 1;
      }
    }
    ranks[d] = rational_rank(std::move(m));
  }
  std::vector<std::size_t> betti;
  for (std::size_t d = 0; d < top; ++d) betti.push_back(faces[d].size() - ranks[d] - ranks[d + 1]);
  return betti;
}

// Connected components of a graph by breadth-first search; component[v].
inline std::vector<std::size_t> bfs_components(std::size_t n,
                                               const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  constexpr auto unseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> comp(n, unseen);
  std::size_t next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != unseen) continue;
    std::deque<std::size_t> queue{s};
    comp[s] = next;
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      for (auto v : adj[u]) {
        if (comp[v] == unseen) {
          comp[v] = next;
          queue.push_back(v);
        }
      }
    }
    ++next;
  }
  return comp;
}

// |Sp_{2g}(Z_L)| by testing every 2g x 2g matrix against the form.
inline std::size_t brute_symplectic_order(int g, std::int64_t L) {
  const auto n = 2 * static_cast<std::size_t>(g);
  std::size_t count = 0;
  for_each_vector(n * n, L, [&](const Vec& entries) {
    std::vector<Vec> cols(n, Vec(n));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) cols[c][r] = entries[r * n + c];
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Vec ei = [&] { Vec e(n, 0); e[i] = 1; return e; }();
        const Vec ej = [&] { Vec e(n, 0); e[j] = 1; return e; }();
        if (pairing(cols[i], cols[j], L) != pairing(ei, ej, L)) return true;
      }
    }
    ++count;
    return true;
  });
  return count;
}

// The 7-vertex Moebius triangulation of the torus.
inline std::vector<std::vector<std::uint32_t>> seven_vertex_torus() {
  std::vector<std::vector<std::uint32_t>> facets;
  for (std::uint32_t i = 0; i < 7; ++i) {
    facets.push_back({i, (i + 1) % 7, (i + 3) % 7});
    facets.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return facets;
}

// Boundary of the (n+1)-simplex on vertices offset .. offset + n + 1.
inline std::vector<std::vector<std::uint32_t>> simplex_boundary(int n, std::uint32_t offset = 0) {
  std::vector<std::vector<std::uint32_t>> facets;
  for (int omit = 0; omit <= n + 1; ++omit) {
    std::vector<std::uint32_t> f;
    for (int v = 0; v <= n + 1; ++v) {
      if (v != omit) f.push_back(offset + static_cast<std::uint32_t>(v));
    }
    facets.push_back(std::move(f));
  }
  return facets;
}

}  // namespace laxbases::oracle
