#include "fmlinv/cli.hpp"
#include "fmlinv/io.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fmlinv;
using namespace fmlinv::testing;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_command(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("fmlinv_cli_" + name);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream(path) << text;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("analyze prints the graded monodromy and L") {
  const Run r = run({"analyze", fixture_path("fixture_a.json"), "--refinement", "F"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "gr_2 -> 1 * gr_1"));
  CHECK(contains(r.out, "critical pairs: (1,2)"));
  CHECK(contains(r.out, "StronglyCritical, L = 5"));
}

TEST_CASE("json output is parseable and byte-stable") {
  const std::vector<std::string> args{"--json", "analyze", fixture_path("fixture_c.json"), "--refinement", "F"};
  const Run a = run(args);
  const Run b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const Json doc = Json::parse(a.out);
  CHECK(doc["strong_criticality"][0]["l_invariant"] == "7");
  CHECK(doc["strong_criticality"][1]["l_invariant"] == "-2");
  CHECK(doc.begin().key() == "command");
}

TEST_CASE("deformation check exit codes") {
  const Run ok = run({"deform-check", fixture_path("fixture_c.json"), "--refinement", "F", "--family", "ok"});
  CHECK(ok.code == 0);
  CHECK(contains(ok.out, "residuals: 0, 0"));
  CHECK(contains(ok.out, "result: PASS"));

  const Run bad =
      run({"deform-check", fixture_path("fixture_c.json"), "--refinement", "F", "--family", "perturbed"});
  CHECK(bad.code == 1);
  CHECK(contains(bad.out, "residuals: 0, 2"));
  CHECK(contains(bad.out, "result: FAIL"));

  const Run json =
      run({"--json", "deform-check", fixture_path("fixture_b.json"), "--refinement", "F", "--family", "ok"});
  CHECK(json.code == 0);
  CHECK(Json::parse(json.out)["passed"] == true);
}

TEST_CASE("usage and parse errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"analyze", fixture_path("fixture_a.json"), "--refinement", "nope"}).code == 2);
  CHECK(run({"deform-check", fixture_path("fixture_c.json"), "--refinement", "F", "--family", "nope"}).code == 2);

  const auto path = scratch("bad.json");
  std::ifstream in(fixture_path("fixture_b.json"));
  std::string text((std::istreambuf_iterator<char>(in)), {});
  text.replace(text.find("\"1/2\""), 5, "\"1/0\"");
  write_file(path, text);
  const Run r = run({"check", path.string()});
  CHECK(r.code == 2);
  CHECK(contains(r.err, "$.phi[0][0]"));

  write_file(path, "{ not json");
  CHECK(run({"check", path.string()}).code == 2);
  CHECK(run({"check", scratch("missing.json").string()}).code == 2);
}

TEST_CASE("domain failures exit with 1") {
  CHECK(run({"max-monodromy", fixture_path("fixture_a.json")}).code == 1);
  CHECK(run({"refinements", fixture_path("fixture_a.json")}).code == 1);
}

TEST_CASE("check and admissibility requirements") {
  CHECK(run({"check", fixture_path("fixture_c.json")}).code == 0);
  CHECK(run({"check", fixture_path("fixture_c.json"), "--require-admissible"}).code == 0);
  // Repeated eigenvalues give a non-certifying verdict.
  const Run a = run({"check", fixture_path("fixture_a.json"), "--require-admissible"});
  CHECK(a.code == 1);
}

TEST_CASE("verify runs the oracles without mismatches") {
  for (const char* name : {"fixture_a.json", "fixture_b.json", "fixture_c.json"}) {
    INFO(name);
    CHECK(run({"--verify", "analyze", fixture_path(name), "--refinement", "F"}).code == 0);
    CHECK(run({"--verify", "dual", fixture_path(name), "--refinement", "F"}).code == 0);
  }
  CHECK(run({"--verify", "check", fixture_path("fixture_c.json")}).code == 0);
  CHECK(run({"--verify", "max-monodromy", fixture_path("fixture_c.json")}).code == 0);
}

TEST_CASE("dual output round-trips through the loader") {
  const auto path = scratch("dual.json");
  const Run r = run({"dual", fixture_path("fixture_a.json"), "--refinement", "F", "-o", path.string()});
  REQUIRE(r.code == 0);
  const Workspace w = load_workspace(path);
  const Refinement d = make_refinement(w.module, w.refinement("F"));
  CHECK(critical_indices(d) == std::vector<CriticalPair>{{2, 3}});
  CHECK(strong_criticality(d, 2).l_invariant == Scalar(5));

  const auto again = scratch("dual2.json");
  REQUIRE(run({"dual", path.string(), "--refinement", "F", "-o", again.string()}).code == 0);
  const Workspace back = load_workspace(again);
  CHECK(back.module.phi == load_fixture("fixture_a.json").module.phi);
  CHECK(back.module.filtration == load_fixture("fixture_a.json").module.filtration);
}

TEST_CASE("parameter and refinement listings") {
  const Run p = run({"params", fixture_path("fixture_b.json"), "--refinement", "F"});
  CHECK(p.code == 0);
  CHECK(contains(p.out, "delta_1(p) = 1, w = 1"));
  const Run m = run({"max-monodromy", fixture_path("fixture_c.json")});
  CHECK(m.code == 0);
  CHECK(contains(m.out, "cross-check: agree"));
  const Run e = run({"--json", "refinements", fixture_path("fixture_c.json")});
  CHECK(e.code == 0);
  CHECK(Json::parse(e.out)["refinements"].size() == 1);
}
