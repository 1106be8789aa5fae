#include "laxbases_cli/run.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "laxbases/errors.hpp"

namespace laxbases::cli {

namespace {

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::invalid_input:
    case Errc::dimension_mismatch:
    case Errc::incomplete_skeleton:
    case Errc::unsupported_dimension:
    case Errc::unsupported_context:
    case Errc::invalid_generator:
      return kInvalidInput;
    case Errc::too_large:
      return kGuardExceeded;
    default:
      return kCheckFailed;
  }
}

std::string input_hash(const JobSpec& job) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : describe(job)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void dispatch(detail::Context& ctx) {
  using Fn = std::function<void(detail::Context&)>;
  static const std::map<std::string, Fn> commands{
      {"vertices", detail::cmd_vertices}, {"build", detail::cmd_build},
      {"betti", detail::cmd_betti},       {"orbit", detail::cmd_orbit},
      {"connect", detail::cmd_connect},   {"fill", detail::cmd_fill},
      {"quotient", detail::cmd_quotient}, {"coinvariants", detail::cmd_coinvariants},
  };
  static const std::map<std::string, Fn> suites{
      {"linalg", detail::suite_linalg}, {"simplicial", detail::suite_simplicial}, {"bases", detail::suite_bases},
      {"sp", detail::suite_sp},         {"heisenberg", detail::suite_heisenberg},
  };
  const auto& job = ctx.job;
  if (job.command == "verify") {
    if (job.suite == "all") {
      for (const auto* name : {"linalg", "simplicial", "bases", "sp", "heisenberg"}) suites.at(name)(ctx);
      return;
    }
    const auto found = suites.find(job.suite);
    if (found == suites.end()) fail(Errc::invalid_input, "unknown suite '" + job.suite + "'");
    found->second(ctx);
    return;
  }
  const auto found = commands.find(job.command);
  if (found == commands.end()) fail(Errc::invalid_input, "unknown command '" + job.command + "'");
  found->second(ctx);
}

}  // namespace

Report run(const JobSpec& job) {
  Report report;
  report.job = job;
  report.version = tool_version();
  report.input_hash = input_hash(job);
  detail::Context ctx(job);
  detail::Stopwatch t;
  auto set_error = [&](const std::string& code, std::string message, int exit) {
    // Library messages start with their own code.
    if (const auto cut = message.find(": "); cut != std::string::npos) message.erase(0, cut + 2);
    report.error_code = code;
    report.error_message = message;
    report.exit_code = exit;
    report.error_witness = ctx.error_witness;
  };
  try {
    job.spec.validate();
    dispatch(ctx);
  } catch (const BudgetExceeded& e) {
    set_error("budget-exceeded", e.what(), kGuardExceeded);
  } catch (const topology::RotationViolation& e) {
    set_error(std::string(to_string(e.code())), e.what(), kCheckFailed);
    Json simplex = Json::array();
    for (auto v : e.simplex().vertices()) simplex.push_back(v);
    report.error_witness = Json{{"simplex", simplex}, {"element", e.element()}};
  } catch (const Error& e) {
    set_error(std::string(to_string(e.code())), e.what(), exit_code_for(e.code()));
  } catch (const std::filesystem::filesystem_error& e) {
    set_error("invalid-input", e.what(), kInvalidInput);
  } catch (const std::bad_alloc&) {
    set_error("too-large", "out of memory", kGuardExceeded);
  }
  report.checks = std::move(ctx.checks);
  report.elapsed_ms = t.ms();
  if (report.exit_code == kPass) {
    for (const auto& c : report.checks) {
      if (!c.pass) report.exit_code = kCheckFailed;
    }
  }
  return report;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Builds and verifies complexes of lax isotropic bases over Z/L"};
  app.require_subcommand(1);
  JobSpec job;
  std::string format = "json";
  std::optional<std::size_t> budget;
  std::optional<int> up_to;
  std::optional<std::string> cache_dir;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--g", job.spec.g, "genus")->check(CLI::Range(1, 64));
    sub->add_option("--L", job.spec.L, "level")->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 20));
    sub->add_option("--delta-k", job.spec.delta_k, "link of {+-a_1, ..., +-a_k}")->check(CLI::NonNegativeNumber);
    sub->add_flag("--restrict-w", job.spec.restrict_W, "restrict to W = <a_1, b_1, ..., a_g>");
    sub->add_option("--max-dim", job.spec.max_dim, "skeleton dimension to build")->check(CLI::NonNegativeNumber);
    sub->add_option("--up-to", up_to, "largest Betti degree (betti)");
    sub->add_option("--cache-dir", cache_dir, "cache directory")->envname("LAXBASES_CACHE_DIR");
    sub->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", job.seed, "random seed");
    sub->add_option("--budget", budget, "step budget for connect and fill");
  };

  common(app.add_subcommand("vertices", "count lax primitive vertices"));
  common(app.add_subcommand("build", "build (or load) the complex and re-verify it"));
  common(app.add_subcommand("betti", "reduced rational Betti numbers"));
  auto* orbit = app.add_subcommand("orbit", "transvection orbit of a vertex");
  common(orbit);
  orbit->add_option("--from", job.from, "base vertex, comma separated (default a_1)");
  auto* connect = app.add_subcommand("connect", "constructive paths between vertices");
  common(connect);
  connect->add_option("--from", job.from, "start vertex, comma separated");
  connect->add_option("--to", job.to, "end vertex, comma separated");
  auto* fill = app.add_subcommand("fill", "null-homotopies of random loops");
  common(fill);
  fill->add_option("--cycles", job.cycles, "number of random loops");
  fill->add_option("--max-length", job.max_length, "longest loop");
  auto* quotient = app.add_subcommand("quotient", "quotient by a congruence kernel");
  common(quotient);
  quotient->add_option("--level", job.level, "kernel of reduction to Z/level")->required();
  auto* coinv = app.add_subcommand("coinvariants", "rational coinvariants of H_1(K)");
  common(coinv);
  coinv->add_option("--k", job.k, "number of fixed a_i");
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  common(verify);
  verify->add_option("--suite", job.suite, "suite")
      ->check(CLI::IsMember({"linalg", "simplicial", "bases", "sp", "heisenberg", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalidInput;
  }
  job.command = app.get_subcommands().front()->get_name();
  job.format = format == "csv" ? Format::csv : Format::json;
  job.budget = budget;
  job.up_to = up_to;
  job.cache_dir = cache_dir;

  const auto report = run(job);
  out << render(report);
  if (report.error_code) err << "laxbases: " << *report.error_message << "\n";
  return report.exit_code;
}

}  // namespace laxbases::cli
