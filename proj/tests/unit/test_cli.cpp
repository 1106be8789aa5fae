#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <unistd.h>

#include <nlohmann/json.hpp>

#include "laxbases/errors.hpp"
#include "laxbases_cli/cache.hpp"
#include "laxbases_cli/report.hpp"
#include "laxbases_cli/run.hpp"

namespace laxbases::cli {
namespace {

namespace fs = std::filesystem;

bases::BasesSpec spec(int g, std::int64_t L, int max_dim = 2, int delta_k = 0, bool w = false) {
  bases::BasesSpec s;
  s.g = g;
  s.L = L;
  s.max_dim = max_dim;
  s.delta_k = delta_k;
  s.restrict_W = w;
  return s;
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("laxbases-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "laxbases");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const Check* find(const Report& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

TEST(Cache, RoundTripIsByteIdentical) {
  const auto x = bases::build_bases(spec(2, 2));
  const auto text = serialize_complex(x);
  const auto back = deserialize_complex(text, x.spec);
  EXPECT_EQ(back.vertices, x.vertices);
  EXPECT_EQ(back.complex, x.complex);
  EXPECT_EQ(serialize_complex(back), text);
  const auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j["format_version"], kCacheFormatVersion);
  EXPECT_FALSE(j["simplices"].contains("0"));
  EXPECT_EQ(j["vertices"].size(), x.vertices.size());
}

TEST(Cache, StoreAndLoadThroughDisk) {
  TempDir dir;
  const auto x = bases::build_bases(spec(2, 3, 1));
  const auto p = cache_path(dir.path(), x.spec);
  cache_store(x, p);
  EXPECT_EQ(cache_load(p, x.spec).complex, x.complex);
  for (const auto& e : fs::directory_iterator(dir.path())) EXPECT_EQ(e.path(), p);
}

TEST(Cache, WrongVersionIsInvalid) {
  const auto x = bases::build_bases(spec(1, 3));
  auto j = nlohmann::ordered_json::parse(serialize_complex(x));
  j["format_version"] = kCacheFormatVersion + 1;
  try {
    deserialize_complex(j.dump(), x.spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::cache_invalid);
  }
}

TEST(Cache, TamperedContentIsInvalid) {
  const auto x = bases::build_bases(spec(2, 2));
  const auto text = serialize_complex(x);
  auto expect_invalid = [&](const std::string& t, const bases::BasesSpec& s) {
    try {
      deserialize_complex(t, s);
      ADD_FAILURE() << t.substr(0, 80);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::cache_invalid);
    }
  };
  expect_invalid(text.substr(0, text.size() / 2), x.spec);
  expect_invalid(text, spec(2, 2, 1));
  auto j = nlohmann::ordered_json::parse(text);
  j["vertices"].erase(j["vertices"].begin());
  expect_invalid(j.dump(), x.spec);
  j = nlohmann::ordered_json::parse(text);
  j["simplices"]["1"][0][1] = 100000;
  expect_invalid(j.dump(), x.spec);
  j = nlohmann::ordered_json::parse(text);
  // {+-a_1, +-b_1} pairs to 1 and is not a simplex.
  j["simplices"]["1"].push_back({0, 1});
  expect_invalid(j.dump(), x.spec);
}

TEST(Cache, DistinctSpecsGetDistinctFiles) {
  TempDir dir;
  const std::vector<bases::BasesSpec> specs{spec(2, 2), spec(2, 3, 1), spec(3, 2, 1, 1), spec(3, 2, 1, 1, true),
                                            spec(2, 2, 1)};
  std::set<fs::path> paths;
  for (const auto& s : specs) paths.insert(cache_path(dir.path(), s));
  EXPECT_EQ(paths.size(), specs.size());
  std::vector<std::thread> threads;
  for (const auto& s : specs) threads.emplace_back([&dir, s] { load_or_build(s, dir.path()); });
  for (auto& t : threads) t.join();
  for (const auto& s : specs) {
    const auto again = load_or_build(s, dir.path());
    EXPECT_TRUE(again.hit) << s.to_string();
    EXPECT_EQ(again.complex.complex, bases::build_bases(s).complex);
  }
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir.path())) ++files;
  EXPECT_EQ(files, specs.size());
}

TEST(Cache, CorruptFileIsRebuilt) {
  TempDir dir;
  const auto s = spec(2, 2);
  const auto p = cache_path(dir.path(), s);
  {
    std::ofstream out(p);
    out << "{\"format_version\": 0}";
  }
  const auto r = load_or_build(s, dir.path());
  EXPECT_FALSE(r.hit);
  EXPECT_TRUE(r.rebuilt_invalid);
  EXPECT_EQ(slurp(p), serialize_complex(bases::build_bases(s)));
}

TEST(Run, VertexCountExample) {
  JobSpec job;
  job.command = "vertices";
  job.spec = spec(3, 3);
  const auto r = run(job);
  EXPECT_EQ(r.exit_code, kPass);
  ASSERT_FALSE(r.checks.empty());
  EXPECT_EQ(r.checks.front().value, "364");
  EXPECT_FALSE(r.checks.front().oracle.empty());
}

TEST(Run, BettiExample) {
  JobSpec job;
  job.command = "betti";
  job.spec = spec(2, 3);
  job.up_to = 0;
  const auto r = run(job);
  EXPECT_EQ(r.exit_code, kPass);
  bool seen = false;
  for (const auto& c : r.checks) {
    if (c.dim == 0 && c.name.find("betti") != std::string::npos) {
      seen = true;
      EXPECT_EQ(c.value, "0");
    }
  }
  EXPECT_TRUE(seen);
}

TEST(Run, SmallestFullVerification) {
  JobSpec job;
  job.command = "verify";
  job.spec = spec(1, 2);
  const auto r = run(job);
  EXPECT_EQ(r.exit_code, kPass);
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name;
  EXPECT_LT(r.elapsed_ms, 60'000.0);
}

TEST(Run, DeterministicForAFixedSeed) {
  JobSpec job;
  job.command = "fill";
  job.spec = spec(3, 2);
  job.cycles = 15;
  job.seed = 99;
  const auto a = run(job), b = run(job);
  ASSERT_EQ(a.checks.size(), b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    EXPECT_EQ(a.checks[i].name, b.checks[i].name);
    EXPECT_EQ(a.checks[i].value, b.checks[i].value);
    EXPECT_EQ(a.checks[i].pass, b.checks[i].pass);
    EXPECT_EQ(a.checks[i].witness, b.checks[i].witness);
  }
  EXPECT_EQ(a.input_hash, b.input_hash);
}

TEST(Run, FailuresCarryWitnesses) {
  JobSpec job;
  job.command = "verify";
  job.suite = "sp";
  job.spec = spec(2, 2);
  const auto r = run(job);
  EXPECT_EQ(r.exit_code, kCheckFailed);
  const auto* rot = find(r, "without_rotations");
  ASSERT_NE(rot, nullptr);
  EXPECT_FALSE(rot->pass);
  ASSERT_TRUE(rot->witness.has_value());
  EXPECT_TRUE(rot->witness->contains("simplex"));
  for (const auto& c : r.checks) {
    if (!c.pass) EXPECT_TRUE(c.witness.has_value()) << c.name;
  }
}

TEST(MainEntry, ExitCodes) {
  EXPECT_EQ(invoke({"vertices", "--g", "2", "--L", "3"}).code, 0);
  EXPECT_EQ(invoke({"vertices", "--g", "0", "--L", "3"}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"coinvariants", "--g", "2", "--k", "2", "--L", "2"}).code, 2);
  EXPECT_EQ(invoke({"quotient", "--g", "2", "--L", "4", "--level", "3"}).code, 2);
  const auto budget = invoke({"connect", "--g", "2", "--L", "5", "--budget", "0"});
  EXPECT_EQ(budget.code, 3);
  EXPECT_NE(budget.err.find("budget"), std::string::npos);
  EXPECT_EQ(invoke({"verify", "--suite", "sp", "--g", "2", "--L", "2"}).code, 1);
}

TEST(MainEntry, JsonReportShape) {
  const auto o = invoke({"vertices", "--g", "1", "--L", "3", "--seed", "7"});
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["tool"], "laxbases");
  EXPECT_EQ(j["job"]["seed"], 7);
  EXPECT_EQ(j["exit_code"], 0);
  ASSERT_FALSE(j["checks"].empty());
  for (const auto& c : j["checks"]) {
    EXPECT_TRUE(c.contains("oracle"));
    EXPECT_TRUE(c.contains("elapsed_ms"));
  }
}

TEST(MainEntry, CsvReportShape) {
  const auto o = invoke({"vertices", "--g", "1", "--L", "3", "--format", "csv"});
  std::istringstream in(o.out);
  std::string header, row;
  std::getline(in, header);
  EXPECT_EQ(header, "g,L,delta_k,restrict_W,check,dim,value,expected,pass,elapsed_ms,seed");
  ASSERT_TRUE(std::getline(in, row));
  EXPECT_EQ(row.rfind("1,3,0,", 0), 0u);
}

TEST(MainEntry, CacheDirectoryFromEnvironment) {
  TempDir dir;
  ::setenv("LAXBASES_CACHE_DIR", dir.path().c_str(), 1);
  const auto first = invoke({"build", "--g", "2", "--L", "2"});
  const auto second = invoke({"build", "--g", "2", "--L", "2"});
  ::unsetenv("LAXBASES_CACHE_DIR");
  EXPECT_EQ(first.code, 0);
  EXPECT_EQ(second.code, 0);
  const auto j1 = nlohmann::json::parse(first.out), j2 = nlohmann::json::parse(second.out);
  EXPECT_EQ(j1["checks"][0]["value"], "built");
  EXPECT_EQ(j2["checks"][0]["value"], "hit");
}

}  // namespace
}  // namespace laxbases::cli
