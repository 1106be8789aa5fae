#include "laxbases_cli/report.hpp"

#include <cstdio>
#include <sstream>

namespace laxbases::cli {

#ifndef LAXBASES_VERSION
#define LAXBASES_VERSION "0.0.0"
#endif

std::string tool_version() { return LAXBASES_VERSION; }

std::string describe(const JobSpec& job) {
  std::ostringstream out;
  out << job.command << " g=" << job.spec.g << " L=" << job.spec.L << " delta_k=" << job.spec.delta_k
      << " restrict_W=" << job.spec.restrict_W << " max_dim=" << job.spec.max_dim;
  if (job.up_to) out << " up_to=" << *job.up_to;
  if (job.command == "verify") out << " suite=" << job.suite;
  out << " seed=" << job.seed;
  if (job.budget) out << " budget=" << *job.budget;
  if (job.from) out << " from=" << *job.from;
  if (job.to) out << " to=" << *job.to;
  if (job.command == "fill") out << " cycles=" << job.cycles << " max_length=" << job.max_length;
  if (job.command == "quotient") out << " level=" << job.level;
  if (job.command == "coinvariants") out << " k=" << job.k;
  return out.str();
}

namespace {

Json job_json(const JobSpec& job) {
  Json j;
  j["command"] = job.command;
  j["g"] = job.spec.g;
  j["L"] = job.spec.L;
  j["delta_k"] = job.spec.delta_k;
  j["restrict_W"] = job.spec.restrict_W;
  j["max_dim"] = job.spec.max_dim;
  if (job.up_to) j["up_to"] = *job.up_to;
  if (job.command == "verify") j["suite"] = job.suite;
  j["seed"] = job.seed;
  j["budget"] = job.budget ? Json(*job.budget) : Json(nullptr);
  if (job.from) j["from"] = *job.from;
  if (job.to) j["to"] = *job.to;
  if (job.command == "fill") {
    j["cycles"] = job.cycles;
    j["max_length"] = job.max_length;
  }
  if (job.command == "quotient") j["level"] = job.level;
  if (job.command == "coinvariants") j["k"] = job.k;
  j["cache_dir"] = job.cache_dir ? Json(*job.cache_dir) : Json(nullptr);
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

}  // namespace

Json to_json(const Report& report) {
  Json j;
  j["tool"] = "laxbases";
  j["version"] = report.version;
  j["job"] = job_json(report.job);
  j["input_hash"] = report.input_hash;
  Json checks = Json::array();
  std::size_t failed = 0;
  for (const auto& c : report.checks) {
    Json e;
    e["check"] = c.name;
    e["dim"] = c.dim ? Json(*c.dim) : Json(nullptr);
    e["value"] = c.value;
    e["expected"] = c.expected.empty() ? Json(nullptr) : Json(c.expected);
    e["pass"] = c.pass;
    e["oracle"] = c.oracle;
    e["elapsed_ms"] = c.elapsed_ms;
    if (c.witness) e["witness"] = *c.witness;
    failed += !c.pass;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  j["summary"] = {{"checks", report.checks.size()}, {"failed", failed}};
  if (report.error_code) {
    Json err;
    err["code"] = *report.error_code;
    err["message"] = report.error_message.value_or("");
    if (report.error_witness) err["witness"] = *report.error_witness;
    j["error"] = std::move(err);
  }
  j["exit_code"] = report.exit_code;
  j["elapsed_ms"] = report.elapsed_ms;
  return j;
}

std::string to_csv(const Report& report) {
  std::ostringstream out;
  out << "g,L,delta_k,restrict_W,check,dim,value,expected,pass,elapsed_ms,seed\n";
  const auto& s = report.job.spec;
  const std::string prefix = std::to_string(s.g) + "," + std::to_string(s.L) + "," + std::to_string(s.delta_k) +
                             "," + (s.restrict_W ? "true" : "false") + ",";
  for (const auto& c : report.checks) {
    out << prefix << csv_field(c.name) << "," << (c.dim ? std::to_string(*c.dim) : "") << "," << csv_field(c.value)
        << "," << csv_field(c.expected) << "," << (c.pass ? "true" : "false") << "," << format_ms(c.elapsed_ms)
        << "," << report.job.seed << "\n";
  }
  if (report.error_code) {
    out << prefix << "error," << "," << csv_field(*report.error_code + ": " + report.error_message.value_or(""))
        << ",," << "false," << format_ms(report.elapsed_ms) << "," << report.job.seed << "\n";
  }
  return out.str();
}

std::string render(const Report& report) {
  if (report.job.format == Format::csv) return to_csv(report);
  return to_json(report).dump(2) + "\n";
}

}  // namespace laxbases::cli
