#include "laxbases_cli/cache.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <nlohmann/json.hpp>

#include "laxbases/errors.hpp"

namespace laxbases::cli {

using bases::BasesComplex;
using bases::BasesSpec;
using topology::Simplex;
using topology::SimplicialComplex;
using topology::Vertex;
using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void invalid(const std::string& why) { fail(Errc::cache_invalid, why); }

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

std::string serialize_complex(const BasesComplex& x) {
  Json j;
  j["format_version"] = kCacheFormatVersion;
  j["g"] = x.spec.g;
  j["L"] = x.spec.L;
  j["delta_k"] = x.spec.delta_k;
  j["restrict_W"] = x.spec.restrict_W;
  j["max_dim"] = x.spec.max_dim;
  Json verts = Json::array();
  for (const auto& v : x.vertices) {
    verts.push_back(std::vector<std::int64_t>(v.rep().coords().begin(), v.rep().coords().end()));
  }
  j["vertices"] = std::move(verts);
  Json simplices = Json::object();
  for (int d = 1; d <= x.complex.dimension(); ++d) {
    Json layer = Json::array();
    for (const auto& s : x.complex.simplices(d)) {
      layer.push_back(std::vector<Vertex>(s.vertices().begin(), s.vertices().end()));
    }
    simplices[std::to_string(d)] = std::move(layer);
  }
  j["simplices"] = std::move(simplices);
  return j.dump();
}

BasesComplex deserialize_complex(const std::string& text, const BasesSpec& spec) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    invalid(std::string("unparsable cache: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("format_version")) invalid("missing format_version");
    if (j.at("format_version").get<int>() != kCacheFormatVersion) {
      invalid("format version " + j.at("format_version").dump() + ", expected " +
              std::to_string(kCacheFormatVersion));
    }
    BasesSpec stored;
    stored.g = j.at("g").get<int>();
    stored.L = j.at("L").get<std::int64_t>();
    stored.delta_k = j.at("delta_k").get<int>();
    stored.restrict_W = j.at("restrict_W").get<bool>();
    stored.max_dim = j.at("max_dim").get<int>();
    if (!(stored == spec)) invalid("cache was built for " + stored.to_string() + ", wanted " + spec.to_string());

    const auto modulus = spec.modulus();
    std::vector<linalg::LaxVector> vertices;
    std::vector<std::string> labels;
    std::vector<Simplex> simplices;
    for (const auto& coords : j.at("vertices")) {
      const linalg::ZLVector rep(spec.g, modulus, coords.get<std::vector<std::int64_t>>());
      const auto lax = linalg::canonical_lax(rep);
      if (!(lax.rep() == rep)) invalid("vertex " + rep.to_string() + " is not a canonical representative");
      if (!bases::is_vertex(spec, lax)) invalid("vertex " + rep.to_string() + " fails the vertex predicate");
      if (!vertices.empty() && !(vertices.back() < lax)) invalid("vertices are not strictly sorted");
      simplices.push_back(Simplex{static_cast<Vertex>(vertices.size())});
      labels.push_back(lax.to_string());
      vertices.push_back(lax);
    }
    if (vertices != bases::enumerate_lax_vertices(spec)) invalid("stored vertex set is incomplete");
    int top = vertices.empty() ? -1 : 0;
    for (const auto& [key, layer] : j.at("simplices").items()) {
      const int d = std::stoi(key);
      if (d < 1 || d > spec.max_dim) invalid("unexpected simplex dimension " + key);
      if (!layer.empty()) top = std::max(top, d);
      for (const auto& entry : layer) {
        auto ids = entry.get<std::vector<Vertex>>();
        if (ids.size() != static_cast<std::size_t>(d) + 1) invalid("simplex of the wrong size in dimension " + key);
        std::vector<linalg::LaxVector> lax;
        for (Vertex v : ids) {
          if (v >= vertices.size()) invalid("simplex references vertex " + std::to_string(v));
          lax.push_back(vertices[v]);
        }
        if (!bases::is_simplex(spec, lax)) invalid("stored simplex fails the simplex predicate");
        simplices.emplace_back(std::move(ids));
      }
    }
    const int complete = top < spec.max_dim ? SimplicialComplex::kComplete : spec.max_dim;
    auto complex = SimplicialComplex::from_simplices(std::move(simplices), std::move(labels), complete);
    return bases::assemble_bases(spec, std::move(vertices), std::move(complex));
  } catch (const Json::exception& e) {
    invalid(std::string("malformed cache: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == Errc::cache_invalid) throw;
    invalid(std::string("inconsistent cache: ") + e.what());
  } catch (const std::invalid_argument&) {
    invalid("non-numeric simplex dimension key");
  }
}

std::string cache_key(const BasesSpec& spec) {
  std::ostringstream text;
  text << "g=" << spec.g << ";L=" << spec.L << ";delta_k=" << spec.delta_k << ";restrict_W=" << spec.restrict_W
       << ";max_dim=" << spec.max_dim << ";format_version=" << kCacheFormatVersion;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(text.str())));
  return buf;
}

std::filesystem::path cache_path(const std::filesystem::path& dir, const BasesSpec& spec) {
  return dir / ("bases-" + cache_key(spec) + ".json");
}

void cache_store(const BasesComplex& x, const std::filesystem::path& path) {
  static std::atomic<unsigned> counter{0};
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(Errc::invalid_input, "cannot write cache file " + tmp.string());
    out << serialize_complex(x);
    if (!out.flush()) fail(Errc::invalid_input, "short write to cache file " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail(Errc::invalid_input, "cannot move cache file into place at " + path.string());
  }
}

BasesComplex cache_load(const std::filesystem::path& path, const BasesSpec& spec) {
  std::ifstream in(path, std::ios::binary);
  if (!in) invalid("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return deserialize_complex(text.str(), spec);
}

CachedBuild load_or_build(const BasesSpec& spec, const std::optional<std::filesystem::path>& dir) {
  spec.validate();
  CachedBuild out;
  if (!dir) {
    out.complex = bases::build_bases(spec);
    return out;
  }
  const auto path = cache_path(*dir, spec);
  if (std::filesystem::exists(path)) {
    try {
      out.complex = cache_load(path, spec);
      out.hit = true;
      return out;
    } catch (const Error& e) {
      if (e.code() != Errc::cache_invalid) throw;
      out.rebuilt_invalid = true;
    }
  }
  out.complex = bases::build_bases(spec);
  cache_store(out.complex, path);
  return out;
}

}  // namespace laxbases::cli
