#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <random>
#include <vector>

#include "laxbases/connectivity.hpp"
#include "laxbases_cli/job.hpp"
#include "laxbases_cli/report.hpp"

namespace laxbases::cli::detail {

struct Context {
  explicit Context(const JobSpec& j)
      : job(j), rng(j.seed) {
    if (j.cache_dir) cache_dir = std::filesystem::path(*j.cache_dir);
  }

  const JobSpec& job;
  std::vector<Check> checks;
  std::mt19937_64 rng;
  std::optional<std::filesystem::path> cache_dir;
  std::optional<Json> error_witness;  // attached to a library error raised mid-command
};

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Check& record(Context& ctx, std::string name, std::optional<int> dim, std::string value, std::string expected,
              bool pass, std::string oracle, double ms, std::optional<Json> witness = std::nullopt);

// Building blocks shared by the commands and the verify suites.
void vertex_count_checks(Context& ctx, const bases::BasesSpec& spec);
void complex_checks(Context& ctx, const bases::BasesComplex& x);
void betti_checks(Context& ctx, const bases::BasesComplex& x, int up_to);
void connect_checks(Context& ctx, const bases::BasesGraph& graph,
                    const std::vector<std::pair<topology::Vertex, topology::Vertex>>& pairs);
void fill_checks(Context& ctx, const bases::BasesGraph& graph, std::size_t cycles, std::size_t max_length);
void orbit_checks(Context& ctx, int g, std::int64_t L, const linalg::LaxVector& base);

void cmd_vertices(Context& ctx);
void cmd_build(Context& ctx);
void cmd_betti(Context& ctx);
void cmd_orbit(Context& ctx);
void cmd_connect(Context& ctx);
void cmd_fill(Context& ctx);
void cmd_quotient(Context& ctx);
void cmd_coinvariants(Context& ctx);

void suite_linalg(Context& ctx);
void suite_simplicial(Context& ctx);
void suite_bases(Context& ctx);
void suite_sp(Context& ctx);
void suite_heisenberg(Context& ctx);

}  // namespace laxbases::cli::detail
