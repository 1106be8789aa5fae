#pragma once

#include <iosfwd>

#include "laxbases_cli/job.hpp"
#include "laxbases_cli/report.hpp"

namespace laxbases::cli {

// Executes the job; library errors become the report's error and exit code.
Report run(const JobSpec& job);

// Parses argv, runs, prints the report to out. Returns the exit status.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace laxbases::cli
