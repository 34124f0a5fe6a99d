#include <optional>
#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "legvar/cli.hpp"
#include "legvar/hamiltonian.hpp"
#include "legvar/identities.hpp"
#include "legvar/io.hpp"
#include "legvar/sphere.hpp"
#include "legvar/varifold.hpp"

namespace py = pybind11;
using namespace legvar;

namespace {

HPoint point(const std::array<double, 5>& c) { return HPoint::from_coords(Eigen::Map<const Vec5>(c.data())); }

std::array<double, 5> coords(const HPoint& p) {
  const Vec5 c = p.coords();
  return {c[0], c[1], c[2], c[3], c[4]};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.attr("__version__") = library_version();
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<DiagnosticError>(m, "DiagnosticError", PyExc_RuntimeError);

  m.def("group_mul", [](const std::array<double, 5>& p, const std::array<double, 5>& q) {
    return coords(group_mul(point(p), point(q)));
  });
  m.def("group_inv", [](const std::array<double, 5>& p) { return coords(group_inv(point(p))); });
  m.def("gauge", [](const std::array<double, 5>& p) { return gauge(point(p)); });
  m.def("koranyi_dist", [](const std::array<double, 5>& p, const std::array<double, 5>& q) {
    return koranyi_dist(point(p), point(q));
  });
  m.def("dilate", [](double t, const std::array<double, 5>& p) { return coords(dilate(t, point(p))); });

  m.def(
      "identity_suite",
      [](unsigned seed, std::size_t samples, double tol) {
        IdentityOptions o{seed, samples, tol};
        py::list out;
        for (const IdentityResult& r : run_identity_suite(o).results) {
          py::dict d;
          d["name"] = r.name;
          d["residual"] = r.residual;
          d["tolerance"] = r.tolerance;
          d["samples"] = r.samples;
          d["pass"] = r.pass;
          out.append(d);
        }
        return out;
      },
      py::arg("seed") = 1, py::arg("samples") = 1000, py::arg("tol") = -1.0);

  py::class_<DiscreteVarifold>(m, "Varifold")
      .def("__len__", &DiscreteVarifold::size)
      .def("mass", &DiscreteVarifold::mass)
      .def("to_csv", [](const DiscreteVarifold& v) {
        std::ostringstream os;
        write_varifold_csv(os, v);
        return os.str();
      });
  m.def("varifold_from_csv", [](const std::string& text) {
    std::istringstream is(text);
    return read_varifold_csv(is);
  });
  m.def(
      "flat_plane_varifold",
      [](const std::array<double, 5>& q, unsigned long long seed, double half_width, int n, double mult) {
        return flat_plane_varifold(point(q), haar_unitary(seed), half_width, n, mult);
      },
      py::arg("center"), py::arg("seed") = 1, py::arg("half_width") = 6.0, py::arg("n") = 601, py::arg("mult") = 1.0);
  m.def("clifford_blowdown_varifold", &clifford_blowdown_varifold, py::arg("phi_max") = 20.0,
        py::arg("n_phi") = 4001, py::arg("n_ab") = 8);
  m.def(
      "capital_theta",
      [](const DiscreteVarifold& v, const std::array<double, 5>& q, double a, const std::string& cutoff) {
        return capital_theta(v, point(q), a, CutoffProfile(parse_cutoff_kind(cutoff)));
      },
      py::arg("varifold"), py::arg("center"), py::arg("a"), py::arg("cutoff") = "poly");
  m.def(
      "_density_json",
      [](const DiscreteVarifold& v, const std::array<double, 5>& q, const std::vector<double>& radii,
         const std::string& cutoff) {
        return to_json(density(v, point(q), CutoffProfile(parse_cutoff_kind(cutoff)), radii)).dump();
      },
      py::arg("varifold"), py::arg("center"), py::arg("radii"), py::arg("cutoff") = "poly");

  m.def("appendix_t", &appendix_t);
  m.def("appendix_gamma", &appendix_gamma);
  m.def(
      "appendix_area", [](int k, int m_nodes) { return appendix_area(k, appendix_grid(k, m_nodes)); }, py::arg("k"),
      py::arg("m") = 128);
  m.def("observable_ids", &observable_ids);
  m.def(
      "limit_pairing", [](const std::string& id, int n) { return limit_pairing(observable_by_id(id), n); },
      py::arg("observable"), py::arg("n") = 64);
  m.def(
      "counterexample_pairing",
      [](int k, const std::string& id, int m_nodes) {
        return counterexample_pairing(k, observable_by_id(id), appendix_grid(k, m_nodes));
      },
      py::arg("k"), py::arg("observable"), py::arg("m") = 128);

  m.def(
      "run",
      [](const std::string& command, const std::string& family, unsigned seed, const std::vector<int>& grid,
         const std::vector<int>& k, const std::vector<double>& radii, double tol, const std::string& format, int p,
         int q, const std::optional<std::vector<std::string>>& observables, const std::string& input,
         const std::vector<double>& center, const std::string& cutoff) {
        RunConfig c;
        c.command = command;
        c.family = family;
        c.seed = seed;
        c.grid = grid;
        c.k = k;
        c.radii = radii;
        c.tol = tol;
        c.format = format;
        c.p = p;
        c.q = q;
        if (observables) c.observables = *observables;
        c.input = input;
        c.center = center;
        c.cutoff = cutoff;
        const RunResult r = legvar::run(c);
        return py::make_tuple(r.exit_code, r.report);
      },
      py::arg("command"), py::arg("family") = "", py::arg("seed") = 1, py::arg("grid") = std::vector<int>{},
      py::arg("k") = std::vector<int>{}, py::arg("radii") = std::vector<double>{}, py::arg("tol") = -1.0,
      py::arg("format") = "json", py::arg("p") = 2, py::arg("q") = 1, py::arg("observables") = py::none(),
      py::arg("input") = "", py::arg("center") = std::vector<double>{}, py::arg("cutoff") = "poly");
}
