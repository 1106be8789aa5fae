#pragma once

// On-disk cache of built complexes, one JSON file per
// (g, L, delta_k, restrict_W, max_dim, format version).

#include <filesystem>
#include <optional>
#include <string>

#include "laxbases/bases_complex.hpp"

namespace laxbases::cli {

inline constexpr int kCacheFormatVersion = 1;

std::string serialize_complex(const bases::BasesComplex& x);
// Rejects anything malformed, of another version, or built for another spec
// with cache_invalid.
bases::BasesComplex deserialize_complex(const std::string& text, const bases::BasesSpec& spec);

std::string cache_key(const bases::BasesSpec& spec);
std::filesystem::path cache_path(const std::filesystem::path& dir, const bases::BasesSpec& spec);

// Writes to a temporary file in the same directory and renames it into place.
void cache_store(const bases::BasesComplex& x, const std::filesystem::path& path);
bases::BasesComplex cache_load(const std::filesystem::path& path, const bases::BasesSpec& spec);

struct CachedBuild {
  bases::BasesComplex complex;
  bool hit = false;
  bool rebuilt_invalid = false;  // an unusable cache file was replaced
};

// Builds without a directory; with one, loads or builds and stores.
CachedBuild load_or_build(const bases::BasesSpec& spec, const std::optional<std::filesystem::path>& dir);

}  // namespace laxbases::cli
