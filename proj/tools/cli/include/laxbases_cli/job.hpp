#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "laxbases/bases_complex.hpp"

namespace laxbases::cli {

enum class Format { json, csv };

struct JobSpec {
  std::string command;
  bases::BasesSpec spec;
  std::optional<int> up_to;  // betti: defaults to g - delta_k - 2
  std::string suite = "all";
  std::optional<std::string> cache_dir;
  Format format = Format::json;
  std::uint64_t seed = 1;
  std::optional<std::size_t> budget;

  // Command-specific inputs.
  std::optional<std::string> from;  // comma separated coordinates
  std::optional<std::string> to;
  std::size_t cycles = 10;
  std::size_t max_length = 8;
  std::int64_t level = 0;
  int k = 1;
};

// Canonical one-line rendering; the input hash is taken over it.
std::string describe(const JobSpec& job);

}  // namespace laxbases::cli
