#include "laxbases/sp_group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <unordered_set>

#include "laxbases/errors.hpp"

namespace laxbases::sp {

using linalg::int128;

namespace {

void require_ring(Modulus modulus) {
  if (modulus.is_integers()) fail(Errc::invalid_input, "symplectic groups are enumerated over Z_L with L >= 2");
}

// (J x)_c for the block form: J(a_i, b_i) = 1, J(b_i, a_i) = -1.
std::int64_t j_times(std::span<const std::int64_t> x, std::size_t c) { return c % 2 == 0 ? x[c + 1] : -x[c - 1]; }

// M^T J M == J mod L with machine arithmetic; entries are already reduced.
bool symplectic_entries(std::size_t n, std::int64_t L, std::span<const std::int64_t> e) {
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r; c < n; ++c) {
      int128 total = 0;
      for (std::size_t i = 0; i < n; i += 2) {
        // column r and c of M, paired through the (i, i+1) block
        total += static_cast<int128>(e[i * n + r]) * e[(i + 1) * n + c] -
                 static_cast<int128>(e[(i + 1) * n + r]) * e[i * n + c];
      }
      std::int64_t expected = 0;
      if (c == r + 1 && r % 2 == 0) expected = 1;
      int128 diff = (total - expected) % L;
      if (diff != 0) return false;
    }
  }
  return true;
}

}  // namespace

SpElement SpElement::from_entries(int genus, Modulus modulus, std::vector<std::int64_t> entries) {
  require_ring(modulus);
  if (genus < 1) fail(Errc::invalid_input, "genus must be positive");
  const auto n = 2 * static_cast<std::size_t>(genus);
  if (entries.size() != n * n) {
    fail(Errc::invalid_input, "expected " + std::to_string(n * n) + " entries, got " + std::to_string(entries.size()));
  }
  for (auto& x : entries) x = modulus.reduce(x);
  if (!symplectic_entries(n, modulus.value(), entries)) {
    fail(Errc::invalid_input, "matrix does not preserve the symplectic form");
  }
  return SpElement(genus, modulus, std::move(entries));
}

SpElement SpElement::identity(int genus, Modulus modulus) {
  require_ring(modulus);
  const auto n = 2 * static_cast<std::size_t>(genus);
  std::vector<std::int64_t> e(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
  return SpElement(genus, modulus, std::move(e));
}

linalg::IntMatrix SpElement::matrix() const {
  const auto n = dimension();
  linalg::IntMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m(r, c) = static_cast<long>((*this)(r, c));
  }
  return m;
}

ZLVector SpElement::apply(const ZLVector& x) const {
  if (x.genus() != genus_ || x.modulus() != modulus_) {
    fail(Errc::dimension_mismatch, "vector " + x.to_string() + " does not match the group");
  }
  const auto n = dimension();
  std::vector<std::int64_t> out(n);
  for (std::size_t r = 0; r < n; ++r) {
    int128 total = 0;
    for (std::size_t c = 0; c < n; ++c) total += static_cast<int128>((*this)(r, c)) * x[c];
    out[r] = modulus_.reduce_wide(total);
  }
  return ZLVector(genus_, modulus_, std::move(out));
}

LaxVector SpElement::apply(const LaxVector& x) const { return linalg::canonical_lax(apply(x.rep())); }

SpElement SpElement::inverse() const {
  // M^{-1} = -J M^T J; entry (r, c) = -sum J(r, i) M(j, i) J(j, c).
  const auto n = dimension();
  std::vector<std::int64_t> e(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t i = r % 2 == 0 ? r + 1 : r - 1;
    const std::int64_t jr = r % 2 == 0 ? 1 : -1;
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t j = c % 2 == 0 ? c + 1 : c - 1;
      const std::int64_t jc = c % 2 == 0 ? -1 : 1;  // J(j, c)
      e[r * n + c] = modulus_.reduce(-jr * (*this)(j, i) * jc);
    }
  }
  return SpElement(genus_, modulus_, std::move(e));
}

SpElement operator*(const SpElement& x, const SpElement& y) {
  if (x.genus_ != y.genus_ || x.modulus_ != y.modulus_) fail(Errc::dimension_mismatch, "group elements differ in shape");
  const auto n = x.dimension();
  std::vector<std::int64_t> e(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      int128 total = 0;
      for (std::size_t k = 0; k < n; ++k) total += static_cast<int128>(x(r, k)) * y(k, c);
      e[r * n + c] = x.modulus_.reduce_wide(total);
    }
  }
  return SpElement(x.genus_, x.modulus_, std::move(e));
}

std::strong_ordering operator<=>(const SpElement& x, const SpElement& y) {
  if (auto c = x.genus_ <=> y.genus_; c != 0) return c;
  if (auto c = x.modulus_.value() <=> y.modulus_.value(); c != 0) return c;
  return std::lexicographical_compare_three_way(x.entries_.begin(), x.entries_.end(), y.entries_.begin(),
                                                y.entries_.end());
}

std::string SpElement::to_string() const {
  const auto n = dimension();
  std::string out = "[";
  for (std::size_t r = 0; r < n; ++r) {
    out += r ? ";" : "";
    for (std::size_t c = 0; c < n; ++c) out += (c ? " " : "") + std::to_string((*this)(r, c));
  }
  return out + "] mod " + std::to_string(modulus_.value());
}

std::size_t SpElementHash::operator()(const SpElement& m) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto x : m.entries()) {
    h ^= static_cast<std::uint64_t>(x);
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

bool is_symplectic(const linalg::IntMatrix& m, Modulus modulus) {
  return linalg::preserves_symplectic_form(m, modulus);
}

SpElement transvection(const ZLVector& v) {
  require_ring(v.modulus());
  const auto n = v.size();
  std::vector<std::int64_t> e(n * n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const int128 entry = (r == c ? 1 : 0) + static_cast<int128>(v[r]) * j_times(v.coords(), c);
      e[r * n + c] = v.modulus().reduce_wide(entry);
    }
  }
  return SpElement(v.genus(), v.modulus(), std::move(e));
}

std::vector<SpElement> all_transvections(int genus, Modulus modulus) {
  require_ring(modulus);
  const auto n = 2 * static_cast<std::size_t>(genus);
  std::vector<std::int64_t> coords(n, 0);
  std::vector<SpElement> out;
  std::unordered_set<SpElement, SpElementHash> seen;
  const auto id = SpElement::identity(genus, modulus);
  while (true) {
    std::size_t i = n;
    while (i > 0 && coords[i - 1] == modulus.value() - 1) coords[--i] = 0;
    if (i == 0) break;
    ++coords[i - 1];
    auto t = transvection(ZLVector(genus, modulus, coords));
    if (t != id && seen.insert(t).second) out.push_back(std::move(t));
  }
  return out;
}

mpz_class estimated_group_order(int genus, Modulus modulus) {
  require_ring(modulus);
  mpz_class order = 1;
  auto rest = modulus.value();
  const unsigned long g = static_cast<unsigned long>(genus);
  for (std::int64_t p = 2; p <= rest; ++p) {
    if (rest % p != 0) continue;
    unsigned long e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    mpz_class pp = static_cast<unsigned long>(p);
    mpz_class part;
    mpz_pow_ui(part.get_mpz_t(), pp.get_mpz_t(), (e - 1) * g * (2 * g + 1) + g * g);
    for (unsigned long i = 1; i <= g; ++i) {
      mpz_class q;
      mpz_pow_ui(q.get_mpz_t(), pp.get_mpz_t(), 2 * i);
      part *= q - 1;
    }
    order *= part;
  }
  return order;
}

std::vector<SpElement> enumerate_group(int genus, Modulus modulus, std::size_t size_guard) {
  require_ring(modulus);
  const auto estimate = estimated_group_order(genus, modulus);
  if (estimate > mpz_class(static_cast<unsigned long>(size_guard))) {
    fail(Errc::too_large, "Sp_" + std::to_string(2 * genus) + "(Z_" + std::to_string(modulus.value()) +
                              ") has order " + estimate.get_str() + ", above the size guard " +
                              std::to_string(size_guard));
  }
  const auto gens = all_transvections(genus, modulus);
  std::vector<SpElement> elements{SpElement::identity(genus, modulus)};
  std::unordered_set<SpElement, SpElementHash> seen(elements.begin(), elements.end());
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& t : gens) {
      auto next = t * elements[head];
      if (seen.contains(next)) continue;
      if (elements.size() >= size_guard) fail(Errc::too_large, "group closure exceeded the size guard");
      seen.insert(next);
      elements.push_back(std::move(next));
    }
  }
  return elements;
}

std::vector<SpElement> enumerate_congruence_kernel(int genus, Modulus modulus, std::int64_t level,
                                                   std::size_t size_guard) {
  require_ring(modulus);
  if (level < 2 || modulus.value() % level != 0) {
    fail(Errc::invalid_input, "level " + std::to_string(level) + " must divide " + std::to_string(modulus.value()));
  }
  const auto n = 2 * static_cast<std::size_t>(genus);
  const auto span = modulus.value() / level;
  double candidates = 1;
  for (std::size_t i = 0; i < n * n; ++i) candidates *= static_cast<double>(span);
  if (candidates > static_cast<double>(size_guard)) {
    fail(Errc::too_large, "congruence kernel search space exceeds the size guard");
  }
  std::vector<std::int64_t> x(n * n, 0);
  std::vector<std::int64_t> e(n * n);
  std::vector<SpElement> out;
  while (true) {
    for (std::size_t i = 0; i < n * n; ++i) e[i] = modulus.reduce((i / n == i % n ? 1 : 0) + level * x[i]);
    if (symplectic_entries(n, modulus.value(), e)) out.push_back(SpElement::from_entries(genus, modulus, e));
    std::size_t i = n * n;
    while (i > 0 && x[i - 1] == span - 1) x[--i] = 0;
    if (i == 0) break;
    ++x[i - 1];
  }
  return out;
}

SpElement reduction_map(const SpElement& m, Modulus target) {
  require_ring(target);
  if (m.modulus().value() % target.value() != 0) {
    fail(Errc::invalid_input, std::to_string(target.value()) + " does not divide " +
                                  std::to_string(m.modulus().value()));
  }
  std::vector<std::int64_t> e(m.entries().begin(), m.entries().end());
  for (auto& x : e) x = target.reduce(x);
  return SpElement(m.genus(), target, std::move(e));
}

ZLVector reduce_vector(const ZLVector& v, Modulus target) {
  require_ring(target);
  if (!v.modulus().is_integers() && v.modulus().value() % target.value() != 0) {
    fail(Errc::invalid_input, std::to_string(target.value()) + " does not divide " +
                                  std::to_string(v.modulus().value()));
  }
  return ZLVector(v.genus(), target, {v.coords().begin(), v.coords().end()});
}

LaxSimplex make_lax_simplex(std::vector<LaxVector> vs) {
  std::sort(vs.begin(), vs.end());
  if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) fail(Errc::invalid_input, "simplex repeats a vertex");
  return vs;
}

LaxVector act(const SpElement& m, const LaxVector& v) { return m.apply(v); }

LaxSimplex act(const SpElement& m, const LaxSimplex& s) {
  std::vector<LaxVector> out;
  for (const auto& v : s) out.push_back(m.apply(v));
  return make_lax_simplex(std::move(out));
}

namespace {

template <class Point>
OrbitCertificate<Point> orbit_impl(const Point& x, std::span<const SpElement> gens) {
  for (const auto& g : gens) {
    if (g.genus() != gens.front().genus() || g.modulus() != gens.front().modulus()) {
      fail(Errc::dimension_mismatch, "generators differ in shape");
    }
  }
  OrbitCertificate<Point> cert{x, {x}, {{}}};
  std::map<Point, std::size_t> index{{x, 0}};
  for (std::size_t head = 0; head < cert.reached.size(); ++head) {
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Point next = act(gens[k], cert.reached[head]);
      if (index.contains(next)) continue;
      index.emplace(next, cert.reached.size());
      auto word = cert.words[head];
      word.push_back(k);
      cert.reached.push_back(std::move(next));
      cert.words.push_back(std::move(word));
    }
  }
  return cert;
}

template <class Point>
bool verify_impl(const OrbitCertificate<Point>& cert, std::span<const SpElement> gens) {
  if (cert.reached.size() != cert.words.size()) return false;
  std::map<Point, std::size_t> distinct;
  for (std::size_t i = 0; i < cert.reached.size(); ++i) {
    Point p = cert.base;
    for (auto k : cert.words[i]) {
      if (k >= gens.size()) return false;
      p = act(gens[k], p);
    }
    if (!(p == cert.reached[i])) return false;
    if (!distinct.emplace(p, i).second) return false;
  }
  return true;
}

}  // namespace

OrbitCertificate<LaxVector> orbit(const LaxVector& x, std::span<const SpElement> gens) {
  return orbit_impl<LaxVector>(x, gens);
}

OrbitCertificate<LaxSimplex> orbit(const LaxSimplex& x, std::span<const SpElement> gens) {
  return orbit_impl<LaxSimplex>(x, gens);
}

bool verify_certificate(const OrbitCertificate<LaxVector>& cert, std::span<const SpElement> gens) {
  return verify_impl(cert, gens);
}

bool verify_certificate(const OrbitCertificate<LaxSimplex>& cert, std::span<const SpElement> gens) {
  return verify_impl(cert, gens);
}

topology::Permutation vertex_permutation(const bases::BasesComplex& x, const SpElement& m) {
  topology::Permutation p;
  p.reserve(x.vertices.size());
  for (const auto& v : x.vertices) {
    const auto image = x.find(m.apply(v));
    if (!image) fail(Errc::invalid_input, m.to_string() + " maps " + v.to_string() + " off the vertex set");
    p.push_back(*image);
  }
  return p;
}

RotationReport check_without_rotations(const topology::SimplicialComplex& x,
                                       std::span<const topology::Permutation> elements) {
  RotationReport report;
  report.elements_checked = elements.size();
  report.simplices_checked = x.total_count();
  if (auto w = topology::find_rotation(x, elements)) {
    report.without_rotations = false;
    report.witness_simplex = w->simplex;
    report.witness_element = w->element;
  }
  return report;
}

RotationReport check_without_rotations(const bases::BasesComplex& x, std::span<const SpElement> group,
                                       std::optional<std::size_t> sample_size, std::uint64_t seed) {
  std::vector<std::size_t> chosen(group.size());
  std::iota(chosen.begin(), chosen.end(), std::size_t{0});
  const bool exhaustive = !sample_size || *sample_size >= group.size();
  if (!exhaustive) {
    std::mt19937_64 rng(seed);
    std::shuffle(chosen.begin(), chosen.end(), rng);
    chosen.resize(*sample_size);
    std::sort(chosen.begin(), chosen.end());
  }
  std::vector<topology::Permutation> perms;
  for (auto i : chosen) {
    auto p = vertex_permutation(x, group[i]);
    for (int d = 1; d <= x.complex.dimension(); ++d) {
      for (const auto& s : x.complex.simplices(d)) {
        std::vector<topology::Vertex> image;
        for (auto v : s.vertices()) image.push_back(p[v]);
        if (!x.complex.contains(topology::Simplex(image))) {
          fail(Errc::invalid_input, group[i].to_string() + " does not act simplicially");
        }
      }
    }
    perms.push_back(std::move(p));
  }
  auto report = check_without_rotations(x.complex, perms);
  if (report.witness_element) report.witness_element = chosen[*report.witness_element];
  report.exhaustive = exhaustive;
  report.seed = seed;
  return report;
}

}  // namespace laxbases::sp
