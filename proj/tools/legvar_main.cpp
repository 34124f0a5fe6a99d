// legvar <identities|surface|density|counterexample> [flags]
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "legvar/cli.hpp"

namespace {

template <typename T>
std::vector<T> split(const std::string& s) {
  std::vector<T> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::istringstream is(item);
    T v;
    if (!(is >> v) || !is.eof()) throw CLI::ValidationError("bad list entry '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Legendrian surfaces, varifold densities and the S^5 counterexample"};
  legvar::RunConfig c;
  std::string grid, ks, radii, observables, center;
  app.add_option("command", c.command, "identities | surface | density | counterexample")->required();
  app.add_option("--family", c.family, "surface: sw_cone, clifford, appendix; density: plane, plane2, blowdown, sw21, clifford");
  app.add_option("--k", ks, "comma separated k values (>= 2)");
  app.add_option("--grid", grid, "comma separated, strictly increasing grid sizes");
  app.add_option("--radii", radii, "comma separated density radii");
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--tol", c.tol, "override every check tolerance");
  app.add_option("--out", c.out, "write the report here instead of stdout");
  app.add_option("--format", c.format, "json or csv");
  app.add_option("--p", c.p, "sw_cone p");
  app.add_option("--q", c.q, "sw_cone q");
  auto* obs = app.add_option("--observables", observables, "comma separated observable ids");
  app.add_option("--input", c.input, "varifold CSV for density");
  app.add_option("--center", center, "z1,z2,z3,z4,phi");
  app.add_option("--cutoff", c.cutoff, "poly or bump");

  try {
    app.parse(argc, argv);
    c.grid = split<int>(grid);
    c.k = split<int>(ks);
    c.radii = split<double>(radii);
    c.center = split<double>(center);
    if (obs->count() > 0) c.observables = split<std::string>(observables);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    app.exit(e);
    return 2;
  }

  const legvar::RunResult r = legvar::run(c);
  if (r.exit_code == 2) {
    std::cerr << r.report;
    return 2;
  }
  if (c.out.empty()) std::cout << r.report;
  return r.exit_code;
}
