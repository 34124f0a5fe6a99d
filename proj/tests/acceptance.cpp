// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "legvar/cli.hpp"
#include "legvar/identities.hpp"
#include "legvar/io.hpp"

using namespace legvar;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

json run_json(RunConfig c, Outcome& o) {
  c.format = "json";
  const RunResult r = run(c);
  o.require(r.exit_code == 0, c.command + " " + c.family + " exit " + std::to_string(r.exit_code));
  if (r.exit_code == 2) return json::object();
  const json j = json::parse(r.report);
  for (const auto& ch : j["checks"])
    if (ch["pass"] != true) o.require(false, ch["name"].get<std::string>());
  return j;
}

RunConfig cfg(const std::string& command, const std::string& family = "") {
  RunConfig c;
  c.command = command;
  c.family = family;
  return c;
}

int failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0) o.require(secs < budget_s, "runtime budget " + std::to_string(budget_s) + " s");
  if (!o.pass) ++failures;
  std::printf("%s criterion %d: %s (%.2f s)%s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), secs,
              o.detail.str().c_str());
  std::fflush(stdout);
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

int main() {
  criterion(1, "identity suite at 1000 random configurations", 5.0, [](Outcome& o) {
    const IdentitySuite s = run_identity_suite();
    double worst = 0;
    for (const IdentityResult& r : s.results) {
      o.require(r.pass, r.name);
      o.require(r.residual < 1e-8, r.name + " residual >= 1e-8");
      o.require(r.samples >= 1000, r.name + " samples");
      worst = std::max(worst, r.residual);
    }
    o.detail << " identities=" << s.results.size() << " worst_residual=" << fmt(worst);
  });

  criterion(2, "Clifford torus lift ladders, energy 8 pi^2, stationarity", 30.0, [](Outcome& o) {
    const json j = run_json(cfg("surface", "clifford"), o);
    const json& r = j["results"];
    o.require(r["legendrian"]["n"] == json({32, 64, 128}), "grid");
    o.detail << " leg_slope=" << fmt(r["legendrian"]["slope"].get<double>())
             << " conf_slope=" << fmt(r["conformality"]["slope"].get<double>())
             << " iso_slope=" << fmt(r["isometry"]["slope"].get<double>())
             << " energy=" << fmt(r["energy"].back().get<double>()) << " target=" << fmt(r["energy_target"].get<double>());
    o.require(r["stationarity"].size() == 5, "five Hamiltonians");
  });

  criterion(3, "Clifford blow-down density 2 pi^2 within 1%", 10.0, [](Outcome& o) {
    const json j = run_json(cfg("density", "blowdown"), o);
    o.detail << " smallest_radius=" << fmt(j["results"]["report"]["smallest_radius_value"].get<double>())
             << " target=" << fmt(j["results"]["target"].get<double>());
  });

  criterion(4, "flat plane density 2 pi and multiplicity two 4 pi within 0.5%", 0, [](Outcome& o) {
    for (const char* fam : {"plane", "plane2"}) {
      const json j = run_json(cfg("density", fam), o);
      const double ext = j["results"]["report"]["extrapolated_density"].get<double>();
      const double target = j["results"]["target"].get<double>();
      o.require(std::abs(ext / target - 1) <= 5e-3, std::string(fam) + " extrapolated");
      o.detail << " " << fam << "=" << fmt(ext) << "/" << fmt(target);
    }
  });

  criterion(5, "monotonicity over at least 6 radii within 1%", 0, [](Outcome& o) {
    for (const char* fam : {"plane", "sw21", "clifford"}) {
      const json j = run_json(cfg("density", fam), o);
      const json& d = j["results"]["report"];
      o.require(d["radii"].size() >= 6, std::string(fam) + " fewer than 6 valid radii");
      o.require(d["relative_violation"].get<double>() <= 1e-2, std::string(fam) + " violation");
      o.detail << " " << fam << ":radii=" << d["radii"].size()
               << ",violation=" << fmt(d["relative_violation"].get<double>());
    }
  });

  criterion(6, "SW cones: lift, conformality, stationarity, winding p-q", 0, [](Outcome& o) {
    for (auto [p, q] : {std::pair{1, 1}, {2, 1}, {3, 2}}) {
      RunConfig c = cfg("surface", "sw_cone");
      c.p = p;
      c.q = q;
      const json j = run_json(c, o);
      const json& r = j["results"];
      o.require(r["legendrian"]["n"].front().get<int>() >= 128, "winding grid below 128");
      o.detail << " (" << p << "," << q << "):stat_slope=" << fmt(r["stationarity"]["slope"].get<double>())
               << ",winding=" << fmt(r["winding"][0].get<double>());
    }
  });

  criterion(7, "appendix tori: metric, area within 0.1%, elliptic system", 0, [](Outcome& o) {
    RunConfig c = cfg("surface", "appendix");
    c.k = {2, 4, 8};
    const json j = run_json(c, o);
    for (const auto& t : j["results"]["tori"]) {
      const double a = t["area"].back().get<double>(), target = t["area_target"].get<double>();
      o.detail << " k=" << t["k"] << ":area_rel=" << fmt(std::abs(a / target - 1))
               << ",pde_slope=" << fmt(t["pde"]["slope"].get<double>());
    }
  });

  criterion(8, "counterexample pairings converge like 1/k", 120.0, [](Outcome& o) {
    const json j = run_json(cfg("counterexample"), o);
    o.require(j["results"]["slopes"].size() >= 5, "panel smaller than 5");
    for (const auto& [id, s] : j["results"]["slopes"].items()) o.detail << " " << id << "=" << fmt(s.get<double>());
  });

  std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return failures == 0 ? 0 : 1;
}
