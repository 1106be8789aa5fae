#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "laxbases_cli/job.hpp"

namespace laxbases::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kInvalidInput = 2, kGuardExceeded = 3 };

struct Check {
  std::string name;
  std::optional<int> dim;
  std::string value;
  std::string expected;  // empty when the check only records a value
  bool pass = true;
  double elapsed_ms = 0;
  std::string oracle;
  std::optional<Json> witness;  // present on every failure
};

struct Report {
  JobSpec job;
  std::string version;
  std::string input_hash;
  std::vector<Check> checks;
  std::optional<std::string> error_code;
  std::optional<std::string> error_message;
  std::optional<Json> error_witness;
  double elapsed_ms = 0;
  int exit_code = kPass;
};

Json to_json(const Report& report);
std::string to_csv(const Report& report);
std::string render(const Report& report);

std::string tool_version();

}  // namespace laxbases::cli
