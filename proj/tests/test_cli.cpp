#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli.hpp"

namespace {

struct CliRun {
  int exit_code = 0;
  std::string out;
};

CliRun run(const std::vector<std::string>& args) {
  std::stringstream captured;
  std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
  CliRun r;
  r.exit_code = gradlab::cli::run_cli(args);
  std::cout.rdbuf(old);
  r.out = captured.str();
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("check: affine classifies Affine with exit 0") {
  const CliRun r = run({"check", "--field", "affine:0.6,0.8:1.0", "--box", "-2,-2,2,2",
                        "--seed", "0"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("verdict: Affine") != std::string::npos);
  CHECK(r.out.find("seed=0") != std::string::npos);
  CHECK(r.out.find("tol_grad_norm=") != std::string::npos);
}

TEST_CASE("check: every zoo verdict matches its claims flags") {
  struct Case {
    const char* spec;
    const char* verdict;
  };
  for (const Case& c : {Case{"affine:0.6,0.8:1.0", "verdict: Affine"},
                        Case{"constant:2.5", "verdict: Constant"},
                        Case{"norm:0", "verdict: NotDifferentiable"},
                        Case{"sqrt_quadratic", "verdict: NotConstantNorm"},
                        Case{"parabola_distance", "verdict: NotConvex"}}) {
    const CliRun r = run({"check", "--field", c.spec, "--box", "-2,-2,2,2"});
    INFO(c.spec << " -> " << r.out);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find(c.verdict) != std::string::npos);
  }
}

TEST_CASE("check: concave mode classifies the negated affine field") {
  const CliRun r = run({"check", "--field", "affine:-0.6,-0.8:-1.0", "--mode", "concave"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("verdict: Affine") != std::string::npos);
}

TEST_CASE("field: emits CSV and PGM, deterministic across runs") {
  const char* csv1 = "cli_dist_1.csv";
  const char* csv2 = "cli_dist_2.csv";
  const char* pgm = "cli_dist.pgm";
  const CliRun r1 = run({"field", "--graph", "parabola", "--box", "-1,-1,1,1", "--nx", "3",
                         "--ny", "3", "--out", csv1, "--pgm", pgm});
  REQUIRE(r1.exit_code == 0);
  const CliRun r2 = run({"field", "--graph", "parabola", "--box", "-1,-1,1,1", "--nx", "3",
                         "--ny", "3", "--out", csv2});
  REQUIRE(r2.exit_code == 0);

  const std::string a = slurp(csv1);
  CHECK(a == slurp(csv2));  // byte-identical
  CHECK(a.rfind("u1,u2,value,gradnorm,class\n", 0) == 0);
  CHECK(a.find("0,-1,1,") != std::string::npos);  // value 1 at (0,-1)

  const std::string p = slurp(pgm);
  CHECK(p.rfind("P5\n3 3\n255\n", 0) == 0);
  CHECK(p.size() == 11 + 9);

  std::remove(csv1);
  std::remove(csv2);
  std::remove(pgm);
}

TEST_CASE("witness: smoothed_norm report has schema keys and positive ray deviation") {
  const char* path = "cli_report.json";
  const CliRun r = run({"witness", "--field", "smoothed_norm:0.1:0", "--radius", "1", "--out",
                        path});
  CHECK(r.exit_code == 0);

  const auto doc = nlohmann::json::parse(slurp(path));
  for (const char* key : {"gradnorm", "fixed_points", "rays", "line_gaps", "convexity",
                          "verdict"}) {
    INFO(key);
    REQUIRE(doc.contains(key));
  }
  CHECK(doc["verdict"]["kind"] == "NotConstantNorm");
  REQUIRE(!doc["rays"].empty());
  bool positive_deviation = false;
  for (const auto& ray : doc["rays"]) {
    if (ray["deviation"].get<double>() > 1e-6) positive_deviation = true;
  }
  CHECK(positive_deviation);
  for (const auto& fp : doc["fixed_points"]) {
    CHECK(fp["converged"].get<bool>());
    CHECK(fp["residual"].get<double>() <= 1e-8);
  }

  // Determinism: a second run writes the identical document.
  const std::string first = slurp(path);
  const CliRun again = run({"witness", "--field", "smoothed_norm:0.1:0", "--radius", "1",
                            "--out", path});
  REQUIRE(again.exit_code == 0);
  CHECK(first == slurp(path));
  std::remove(path);
}

TEST_CASE("zoo lists the available specs") {
  const CliRun r = run({"zoo"});
  CHECK(r.exit_code == 0);
  for (const char* name : {"affine", "constant", "norm", "smoothed_norm", "sqrt_quadratic",
                           "quadratic", "parabola_distance"}) {
    INFO(name);
    CHECK(r.out.find(name) != std::string::npos);
  }
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run({"frobnicate"}).exit_code == 2);
  CHECK(run({"check"}).exit_code == 2);                                  // missing --field
  CHECK(run({"check", "--field", "nope:1"}).exit_code == 2);             // unknown spec
  CHECK(run({"check", "--field", "affine:1,0:0", "--box", "0,0,1"}).exit_code == 2);
  CHECK(run({"field", "--graph", "helix", "--out", "x.csv"}).exit_code == 2);
  CHECK(run({"check", "--field", "affine:1,0:0", "--bogus-flag"}).exit_code == 2);
}
