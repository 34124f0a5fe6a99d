#include "legvar/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace legvar {

ParseError::ParseError(const std::string& what, std::size_t line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

namespace {

template <typename V>
json vec_json(const V& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vec5 vec5_from_json(const json& j) {
  if (!j.is_array() || j.size() != 5) throw ParseError("expected an array of 5 numbers", 0);
  Vec5 v;
  for (int i = 0; i < 5; ++i) v[i] = j.at(i).get<double>();
  return v;
}

LegendrianPlane plane_from_ambient(const HPoint& base, const Vec5& a1, const Vec5& a2, std::size_t line) {
  const Vec5 c1 = frame_coeffs(base, a1), c2 = frame_coeffs(base, a2);
  if (std::abs(c1[4]) > 1e-8 || std::abs(c2[4]) > 1e-8) throw ParseError("plane vectors are not horizontal", line);
  LegendrianPlane pl(base, c1.head<4>(), c2.head<4>());
  try {
    pl.validate(1e-8);
  } catch (const DomainError& e) {
    throw ParseError(e.what(), line);
  }
  return pl;
}

std::string fmt(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

json to_json(const HPoint& p) { return vec_json(p.coords()); }

HPoint point_from_json(const json& j) { return HPoint::from_coords(vec5_from_json(j)); }

json to_json(const LegendrianPlane& pl) {
  return {{"base", to_json(pl.base)}, {"Z1", vec_json(pl.z1.ambient())}, {"Z2", vec_json(pl.z2.ambient())}};
}

LegendrianPlane plane_from_json(const json& j) {
  const HPoint base = point_from_json(j.at("base"));
  return plane_from_ambient(base, vec5_from_json(j.at("Z1")), vec5_from_json(j.at("Z2")), 0);
}

json to_json(const GridDomain& d) {
  return {{"topology", topology_name(d.topology)},
          {"origin", vec_json(d.origin)},
          {"edge1", vec_json(d.edge1)},
          {"edge2", vec_json(d.edge2)},
          {"n1", d.n1},
          {"n2", d.n2}};
}

json to_json(const GridSurface& s) {
  json nodes = json::array(), mult = json::array();
  for (std::size_t k = 0; k < s.u.size(); ++k) {
    nodes.push_back(to_json(s.u[k]));
    mult.push_back(s.N[k]);
  }
  return {{"domain", to_json(s.domain)}, {"phi_jump", {s.phi_jump[0], s.phi_jump[1]}}, {"u", nodes}, {"N", mult}};
}

json to_json(const SurfaceReport& r) {
  return {{"legendrian_residual", r.legendrian_residual},
          {"conformality_residual", r.conformality_residual},
          {"dirichlet_energy", r.dirichlet_energy},
          {"notes", r.notes}};
}

json to_json(const DensityReport& r) {
  return {{"center", to_json(r.center)},
          {"radii", r.radii},
          {"theta", r.theta_values},
          {"limit_integrand", r.limit_values},
          {"skipped_radii", r.skipped_radii},
          {"spacing", r.spacing},
          {"extrapolated_density", r.extrapolated_density},
          {"fit_alpha", r.fit_alpha},
          {"fit_c", r.fit_c},
          {"smallest_radius_value", r.smallest_radius_value},
          {"spread", r.spread},
          {"monotonicity_violation", r.monotonicity_violation},
          {"relative_violation", r.relative_violation}};
}

json to_json(const CounterexampleRow& r) {
  return {{"k", r.k}, {"observable_id", r.observable}, {"pairing", r.pairing}, {"limit", r.limit}, {"abs_err", r.abs_err}};
}

void write_varifold_csv(std::ostream& os, const DiscreteVarifold& v) {
  os << "b1,b2,b3,b4,b5,z1_1,z1_2,z1_3,z1_4,z1_5,z2_1,z2_2,z2_3,z2_4,z2_5,weight\n";
  for (const VarifoldSample& s : v.samples) {
    const Vec5 b = s.plane.base.coords(), a1 = s.plane.z1.ambient(), a2 = s.plane.z2.ambient();
    for (const Vec5* x : {&b, &a1, &a2})
      for (int i = 0; i < 5; ++i) os << fmt((*x)[i]) << ',';
    os << fmt(s.weight) << '\n';
  }
}

DiscreteVarifold read_varifold_csv(std::istream& is) {
  DiscreteVarifold v;
  std::string line;
  std::size_t no = 0;
  bool seen_data = false;
  while (std::getline(is, line)) {
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!seen_data && std::isalpha(static_cast<unsigned char>(line[first]))) {
      seen_data = true;  // header
      continue;
    }
    seen_data = true;
    if (line.find_last_not_of(" \t") != std::string::npos && line[line.find_last_not_of(" \t")] == ',')
      throw ParseError("empty field", no);
    std::vector<double> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t"), e = cell.find_last_not_of(" \t");
      if (b == std::string::npos) throw ParseError("empty field", no);
      double x = 0.0;
      const char* lo = cell.data() + b;
      const char* hi = cell.data() + e + 1;
      const auto res = std::from_chars(lo, hi, x);
      if (res.ec != std::errc() || res.ptr != hi || !std::isfinite(x)) throw ParseError("bad number '" + cell + "'", no);
      f.push_back(x);
    }
    if (f.size() != 16) throw ParseError("expected 16 fields, got " + std::to_string(f.size()), no);
    const Vec5 b = Eigen::Map<const Vec5>(f.data()), a1 = Eigen::Map<const Vec5>(f.data() + 5),
               a2 = Eigen::Map<const Vec5>(f.data() + 10);
    if (!(f[15] > 0.0)) throw ParseError("weight must be positive", no);
    v.samples.push_back({plane_from_ambient(HPoint::from_coords(b), a1, a2, no), f[15]});
  }
  return v;
}

void write_surface_csv(std::ostream& os, const GridSurface& s) {
  os << "x1,x2,z1,z2,z3,z4,phi,N\n";
  for (std::size_t k = 0; k < s.u.size(); ++k) {
    const auto [i, j] = s.domain.ij(k);
    const Vec2 x = s.domain.node(i, j);
    os << fmt(x[0]) << ',' << fmt(x[1]);
    for (int c = 0; c < 5; ++c) os << ',' << fmt(s.u[k].coords()[c]);
    os << ',' << s.N[k] << '\n';
  }
}

void write_sphere_csv(std::ostream& os, const SphereSurface& s) {
  os << "theta,phi,re_w1,im_w1,re_w2,im_w2,re_w3,im_w3\n";
  for (std::size_t k = 0; k < s.u.size(); ++k) {
    const auto [i, j] = s.domain.ij(k);
    const Vec2 x = s.domain.node(i, j);
    os << fmt(x[0]) << ',' << fmt(x[1]);
    for (int l = 0; l < 3; ++l) os << ',' << fmt(s.u[k][l].real()) << ',' << fmt(s.u[k][l].imag());
    os << '\n';
  }
}

}  // namespace legvar
