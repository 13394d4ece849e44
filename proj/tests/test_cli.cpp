#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "pencils/cli.hpp"

using json = nlohmann::json;
using pencils::cli::run;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct CaptureStdout {
  std::ostringstream buffer;
  std::streambuf* old;
  CaptureStdout() : old(std::cout.rdbuf(buffer.rdbuf())) {}
  ~CaptureStdout() { std::cout.rdbuf(old); }
};

std::string tmp_path(const std::string& name) {
  return std::string("/tmp/pencil_test_") + name;
}

}  // namespace

TEST_CASE("identical argv and seed give byte-identical reports") {
  std::string p1 = tmp_path("det1.json"), p2 = tmp_path("det2.json");
  for (const std::string& p : {p1, p2}) {
    CaptureStdout cap;
    int rc = run({"analyze", "--f", "X*Y", "--g", "X+Y", "--field", "q",
                  "--mode", "sparse", "--seed", "42", "--report", p,
                  "--quiet"});
    CHECK(rc == 0);
  }
  CHECK(slurp(p1) == slurp(p2));
}

TEST_CASE("analyze report validates against the schema keys") {
  std::string p = tmp_path("schema.json");
  CaptureStdout cap;
  int rc = run({"analyze", "--f", "X*Y", "--g", "X+Y", "--field", "fp:1009",
                "--seed", "3", "--report", p, "--quiet"});
  CHECK(rc == 0);
  json j = json::parse(slurp(p));
  for (const char* key :
       {"spectral_points", "rho", "m", "omega", "theta", "kappa", "bounds",
        "field", "seed", "warnings"})
    CHECK(j.contains(key));
  CHECK(j["field"] == "Fp");
  CHECK(j["seed"] == 3);
  CHECK(j["rho"] == 2);
}

TEST_CASE("usage errors exit 1") {
  CaptureStdout cap;
  CHECK(run({"analyze"}) == 1);                        // missing --f
  CHECK(run({"analyze", "--f", "2X"}) == 1);           // syntax error
  CHECK(run({"analyze", "--f", "X*Y", "--g", "X*Y"}) == 1);  // non-reduced
  CHECK(run({"nonsense"}) == 1);
  CHECK(run({"spectrum-bf", "--f", "X*Y", "--g", "X+Y", "--prime", "10"}) ==
        1);  // 10 not prime
}

TEST_CASE("irreducible subcommand output") {
  CaptureStdout cap;
  int rc = run({"irreducible", "--f", "Y^2 - X^3 - X", "--field", "q"});
  CHECK(rc == 0);
  CHECK(cap.buffer.str().find("irreducible: true") != std::string::npos);

  CaptureStdout cap2;
  rc = run({"irreducible", "--f", "(X+Y)*(X-Y)", "--field", "q"});
  CHECK(rc == 0);
  CHECK(cap2.buffer.str().find("irreducible: false") != std::string::npos);
}

TEST_CASE("spectrum-bf subcommand") {
  std::string p = tmp_path("bf.json");
  CaptureStdout cap;
  int rc = run({"spectrum-bf", "--f", "Y - X^2", "--g", "1", "--prime",
                "101", "--report", p});
  CHECK(rc == 0);
  CHECK(cap.buffer.str().find("(0:1) kernel_dim 2") != std::string::npos);
  json j = json::parse(slurp(p));
  REQUIRE(j["spectral_points"].size() == 1);
  CHECK(j["spectral_points"][0]["kernel_dim"] == 2);
}

TEST_CASE("newton subcommand writes counts and svg") {
  std::string p = tmp_path("newton.json"), svg = tmp_path("newton.svg");
  CaptureStdout cap;
  int rc = run({"newton", "--f", "1 + X*Y + X^2*Y^2 + X^3*Y^2 + X^2*Y^3",
                "--report", p, "--svg", svg, "--quiet"});
  CHECK(rc == 0);
  json j = json::parse(slurp(p));
  CHECK(j["N"] == 5);
  CHECK(j["N_X"] == 1);
  CHECK(j["N_Y"] == 1);
  REQUIRE(j["good_edges"].size() == 1);
  CHECK(j["good_edges"][0]["points_on_edge"] == 2);
  CHECK(slurp(svg).rfind("<svg", 0) == 0);
}

TEST_CASE("bertini subcommand is deterministic for a fixed seed") {
  std::string p1 = tmp_path("bert1.json"), p2 = tmp_path("bert2.json");
  for (const std::string& p : {p1, p2}) {
    CaptureStdout cap;
    int rc = run({"bertini", "--poly", "X1*X2*X3", "--vars", "3", "--seed",
                  "11", "--report", p, "--quiet"});
    CHECK(rc == 0);
  }
  CHECK(slurp(p1) == slurp(p2));
  json j = json::parse(slurp(p1));
  CHECK(j["degree"] == 3);
  CHECK(j["kernel_dim"] == 2);
  CHECK(j["substitution"].size() == 3);
}

TEST_CASE("PENCIL_SEED environment fallback") {
  setenv("PENCIL_SEED", "99", 1);
  std::string p = tmp_path("envseed.json");
  CaptureStdout cap;
  int rc = run({"analyze", "--f", "X*Y", "--g", "X+Y", "--report", p,
                "--quiet"});
  CHECK(rc == 0);
  unsetenv("PENCIL_SEED");
  json j = json::parse(slurp(p));
  CHECK(j["seed"] == 99);
}

TEST_CASE("paper-examples bundle") {
  std::string p = tmp_path("paper.json");
  CaptureStdout cap;
  int rc = run({"paper-examples", "--report", p, "--quiet"});
  CHECK(rc == 0);
  json j = json::parse(slurp(p));
  CHECK(j["dense_cases"].size() == 5);
  for (const auto& c : j["dense_cases"]) CHECK(c["matches_reference"] == true);
  CHECK(j["lo_example"].size() == 3);
  CHECK(j["third_example"]["N_plus_region"]["computed_bound"] == 19);
}
