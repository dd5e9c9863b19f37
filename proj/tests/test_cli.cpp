#include <catch_amalgamated.hpp>

#include <sstream>

#include "pwl/cli.hpp"
#include "pwl/json_io.hpp"

using namespace pwl;

namespace {
struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "pwlc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& s, const std::string& sub) { return s.find(sub) != std::string::npos; }
}  // namespace

TEST_CASE("regions summary") {
  auto r = run({"regions", "--preset", "appendixA1a"});
  CHECK(r.code == kOk);
  CHECK(has(r.out, "c# = 9"));
  CHECK(has(r.out, "volume conserved: yes"));
  auto e = run({"regions", "--preset", "example3"});
  CHECK(has(e.out, "breakpoints: 1/7, 2/5, 2/3"));
}

TEST_CASE("complexity summaries") {
  CHECK(has(run({"complexity", "--preset", "appendixA2"}).out, "c# = 11, c~ = 7 (method: orbit_kamiya"));
  CHECK(has(run({"complexity", "--preset", "example1"}).out, "c~ = 1 (method: one_dim_exact)"));
  auto iso = run({"complexity", "--preset", "example1", "--path", "isometry"});
  CHECK(has(iso.out, "isometry_search_exact"));
}

TEST_CASE("chambers and orbits") {
  auto c = run({"chambers", "--preset", "appendixA1b"});
  CHECK(has(c.out, "chambers = 10"));
  CHECK(has(c.out, "general position: no (violating: H1, H3, H4)"));
  auto o = run({"orbits", "--preset", "appendixA2"});
  CHECK(has(o.out, "orbits = 7 (direct), 7 (kamiya"));
}

TEST_CASE("bounds table") {
  auto b = run({"bounds", "--m", "2", "--n", "2"});
  CHECK(b.code == kOk);
  CHECK(has(b.out, "formula_id"));
  CHECK(has(b.out, "asymptotic guide, not exact count"));
}

TEST_CASE("json artifact on stdout is valid and echoes the config") {
  auto r = run({"regions", "--preset", "appendixA2", "--output", "-"});
  REQUIRE(r.code == kOk);
  auto j = parse_json(r.out);
  CHECK(j["config"]["preset"] == "appendixA2");
  CHECK(j["config"]["seed"] == 0);
  CHECK(j["pieces"].size() == 11);
  CHECK(has(r.err, "c# = 11"));
}

TEST_CASE("csv artifact starts with the config line") {
  auto r = run({"chambers", "--preset", "appendixA2", "--format", "csv", "--output", "-"});
  REQUIRE(r.code == kOk);
  CHECK(r.out.rfind("# config: ", 0) == 0);
}

TEST_CASE("outputs are deterministic for a fixed seed") {
  auto a = run({"complexity", "--preset", "inv(2,3)", "--seed", "5", "--output", "-"});
  auto b = run({"complexity", "--preset", "inv(2,3)", "--seed", "5", "--output", "-"});
  REQUIRE(a.code == kOk);
  CHECK(a.out == b.out);
  auto s1 = run({"sweep", "--family", "inv", "--m", "2:2", "--n", "2:3", "--jobs", "2"});
  auto s2 = run({"sweep", "--family", "inv", "--m", "2:2", "--n", "2:3", "--jobs", "1"});
  CHECK(s1.code == kOk);
  CHECK(s1.out == s2.out);
}

TEST_CASE("sweep rows") {
  auto s = run({"sweep", "--family", "montufar", "--m", "2:2", "--n", "2:2", "--L", "1:1"});
  REQUIRE(s.code == kOk);
  CHECK(has(s.out, "family,m,n,L,c_sharp"));
  CHECK(has(s.out, "montufar,2,2,1,44,"));
  auto empty = run({"sweep", "--family", "inv", "--m", "3:2"});
  CHECK(empty.code == kOk);
  CHECK(std::count(empty.out.begin(), empty.out.end(), '\n') == 1);
}

TEST_CASE("sweep artifact echoes the config") {
  auto s = run({"sweep", "--family", "inv", "--m", "2:2", "--n", "2:2", "--output", "-"});
  REQUIRE(s.code == kOk);
  auto j = parse_json(s.out.substr(s.out.find('{')));
  CHECK(j["config"]["command"] == "sweep");
  CHECK(j["rows"].size() == 1);
}

TEST_CASE("usage errors, parse errors and refusals") {
  CHECK(run({"regions", "--preset", "nosuch"}).code == kUsage);
  CHECK(run({"regions"}).code == kUsage);
  CHECK(run({"frobnicate"}).code == kUsage);
  CHECK(run({"regions", "--input", "/nonexistent.json"}).code == kUsage);
  auto refused = run({"regions", "--preset", "montufar(2,3,3,3)", "--cap", "1000"});
  CHECK(refused.code == kRefused);
  CHECK(has(refused.err, "cap"));
}
