#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "legvar/cli.hpp"
#include "legvar/io.hpp"
#include "legvar/varifold.hpp"

using namespace legvar;

namespace {

RunConfig config(const std::string& command) {
  RunConfig c;
  c.command = command;
  return c;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("legvar_test_" + name)).string();
}

}  // namespace

TEST_CASE("identities command") {
  const RunResult r = run(config("identities"));
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.report);
  CHECK(j["pass"] == true);
  CHECK(j["version"] == library_version());
  CHECK(j["config"]["seed"] == 1);
  CHECK(j["tolerances"].contains("monotonicity_identity_poly"));
  CHECK(r.report == run(config("identities")).report);

  std::vector<std::string> passing;
  for (const auto& row : j["results"]["identities"]) passing.push_back(row["name"]);
  for (unsigned seed = 2; seed <= 11; ++seed) {
    RunConfig c = config("identities");
    c.seed = seed;
    const json js = json::parse(run(c).report);
    std::vector<std::string> names;
    for (const auto& row : js["results"]["identities"])
      if (row["pass"] == true) names.push_back(row["name"]);
    CHECK(names == passing);
  }

  RunConfig bad = config("identities");
  bad.tol = 1e-30;
  const RunResult rb = run(bad);
  CHECK(rb.exit_code == 1);
  CHECK(!json::parse(rb.report)["results"]["failing"].empty());
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run(config("frobnicate")).exit_code == 2);
  RunConfig c = config("counterexample");
  c.observables.clear();
  CHECK(run(c).exit_code == 2);
  c.observables = {"no_such_observable"};
  CHECK(run(c).exit_code == 2);
  c = config("surface");
  c.family = "clifford";
  c.grid = {64, 32};
  CHECK(run(c).exit_code == 2);
  c.grid = {32};
  CHECK(run(c).exit_code == 2);
  c.family = "torus";
  c.grid = {};
  CHECK(run(c).exit_code == 2);
  c = config("counterexample");
  c.k = {1, 4};
  CHECK(run(c).exit_code == 2);
  c = config("density");
  c.family = "plane";
  c.format = "xml";
  CHECK(run(c).exit_code == 2);
  c.format = "json";
  c.center = {1, 2};
  CHECK(run(c).exit_code == 2);
}

TEST_CASE("surface command") {
  RunConfig c = config("surface");
  c.family = "clifford";
  const RunResult r = run(c);
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.report);
  CHECK(j["results"]["energy_target"].get<double>() == doctest::Approx(8 * std::numbers::pi * std::numbers::pi));
  CHECK(j["results"]["legendrian"]["n"] == json({32, 64, 128}));
  c.format = "csv";
  const RunResult rc = run(c);
  CHECK(rc.report.rfind("check,value,target,tolerance,relation,pass\n", 0) == 0);

  c = config("surface");
  c.family = "sw_cone";
  c.p = 3;
  c.q = 2;
  c.grid = {128, 256};
  const json sw = json::parse(run(c).report);
  CHECK(sw["pass"] == true);
  CHECK(sw["results"]["winding_target"] == 1);

  c = config("surface");
  c.family = "appendix";
  c.k = {4};
  const json ap = json::parse(run(c).report);
  CHECK(ap["pass"] == true);
  CHECK(ap["results"]["tori"][0]["area_target"].get<double>() ==
        doctest::Approx(4 * std::numbers::pi * std::numbers::pi * std::sqrt(3.0 / 4.0)));
}

TEST_CASE("density command on built-ins and files") {
  RunConfig c = config("density");
  c.family = "plane2";
  const json j = json::parse(run(c).report);
  CHECK(j["pass"] == true);
  CHECK(j["results"]["target"].get<double>() == doctest::Approx(4 * std::numbers::pi));

  c.family = "blowdown";
  CHECK(run(c).exit_code == 0);

  // Round trip through a CSV file.
  const std::string path = temp_path("plane.csv");
  {
    std::ofstream os(path);
    write_varifold_csv(os, flat_plane_varifold(HPoint(), haar_unitary(3), 3.0, 121));
  }
  c = config("density");
  c.input = path;
  c.radii = {0.4, 0.6, 0.9, 1.2};
  const RunResult r = run(c);
  CHECK(r.exit_code == 0);
  CHECK(json::parse(r.report)["results"]["report"]["smallest_radius_value"].get<double>() ==
        doctest::Approx(2 * std::numbers::pi).epsilon(5e-3));
  c.radii.clear();
  CHECK(run(c).exit_code == 2);

  {
    std::ofstream os(path);
    os << "b1,b2,b3,b4,b5,z1_1,z1_2,z1_3,z1_4,z1_5,z2_1,z2_2,z2_3,z2_4,z2_5,weight\n";
    os << "0,0,0,0,0,1,0,0,0,0,0,0,1,0,0,1\n";
    os << "0,0,0,0,0,1,0,0,0,0,0,0,1,0,0\n";
  }
  c.radii = {0.5};
  const RunResult bad = run(c);
  CHECK(bad.exit_code == 2);
  CHECK(bad.report.find("line 3") != std::string::npos);
  c.input = temp_path("missing.csv");
  CHECK(run(c).exit_code == 2);
  std::remove(path.c_str());
}

TEST_CASE("counterexample command") {
  RunConfig c = config("counterexample");
  c.k = {2, 4, 8};
  c.observables = {"unit", "w3_modulus2"};
  c.grid = {64};
  const RunResult r = run(c);
  const json j = json::parse(r.report);
  CHECK(j["results"]["rows"].size() == 6);
  CHECK(j["results"]["rows"][0].contains("closed_form"));
  CHECK(j["config"]["observables"] == json({"unit", "w3_modulus2"}));

  c.format = "csv";
  const std::string path = temp_path("pairings.csv");
  c.out = path;
  const RunResult rc = run(c);
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == rc.report);
  CHECK(rc.report.rfind("k,observable_id,pairing,limit,abs_err\n", 0) == 0);
  // Identical configs give byte-identical reports.
  CHECK(run(c).report == rc.report);
  std::remove(path.c_str());

  c.out = "/nonexistent_dir/x.csv";
  CHECK(run(c).exit_code == 2);
}
