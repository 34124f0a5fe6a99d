#include "legvar/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "legvar/convergence.hpp"
#include "legvar/parallel.hpp"

namespace legvar {

namespace {

constexpr double kPi = std::numbers::pi;

double re_inner(const Vec3c& a, const Vec3c& b) { return a.dot(b).real(); }  // dot conjugates a
double im_inner(const Vec3c& a, const Vec3c& b) { return a.dot(b).imag(); }

double wrapped_arg(const Vec3c& w) { return std::arg(w[2]); }

}  // namespace

Vec6 to_real6(const Vec3c& w) {
  Vec6 x;
  for (int l = 0; l < 3; ++l) {
    x[2 * l] = w[l].real();
    x[2 * l + 1] = w[l].imag();
  }
  return x;
}

Vec3c to_complex3(const Vec6& x) {
  return Vec3c(std::complex<double>(x[0], x[1]), std::complex<double>(x[2], x[3]),
               std::complex<double>(x[4], x[5]));
}

SpherePoint::SpherePoint(const Vec3c& w_) : w(w_) {
  if (!w.allFinite() || std::abs(w.norm() - 1.0) > 1e-12)
    throw DomainError("SpherePoint: expected a unit vector of C^3");
}

double contact_alpha_s5(const SpherePoint& p, const Vec6& v, double tol) {
  const Vec3c c = to_complex3(v);
  if (std::abs(re_inner(p.w, c)) > tol * (1.0 + v.norm()))
    throw DomainError("contact_alpha_s5: vector is not tangent to the sphere");
  return im_inner(p.w, c);
}

Vec3c hopf_map(const SpherePoint& p) {
  Vec3c w = p.w / p.w.norm();
  for (int l = 0; l < 3; ++l) {
    if (std::abs(w[l]) > 1e-14) {
      w *= std::conj(w[l]) / std::abs(w[l]);
      w[l] = std::abs(w[l]);
      break;
    }
  }
  return w;
}

double fiber_distance(const SpherePoint& p) {
  const double r3 = std::abs(p.w[2]);
  return std::sqrt(std::norm(p.w[0]) + std::norm(p.w[1]) + (1.0 - r3) * (1.0 - r3));
}

double s5_plane_residual(const SpherePoint& p, const Vec6& a, const Vec6& b) {
  if (!(a.norm() > 0.0) || !(b.norm() > 0.0)) return std::numeric_limits<double>::infinity();
  const Vec3c ca = to_complex3(a / a.norm()), cb = to_complex3(b / b.norm());
  return std::max({std::abs(re_inner(p.w, ca)), std::abs(re_inner(p.w, cb)), std::abs(im_inner(p.w, ca)),
                   std::abs(im_inner(p.w, cb)), std::abs(im_inner(ca, cb))});
}

Mat6 plane_projector(const Vec6& a, const Vec6& b) {
  const Vec6 e1 = a.normalized();
  const Vec6 e2 = (b - e1.dot(b) * e1).normalized();
  return e1 * e1.transpose() + e2 * e2.transpose();
}

double appendix_t(int k) {
  if (k < 2) throw DomainError("appendix_t: k must be at least 2");
  return 1.0 / std::sqrt(2.0 * k - 2.0);
}

double appendix_gamma(int k) {
  if (k < 2) throw DomainError("appendix_gamma: k must be at least 2");
  return std::sqrt(double(k) / (k - 1.0));
}

Vec3c appendix_point(double t, double theta, double phi_t) {
  const double s = std::sqrt(1.0 + 2.0 * t * t);
  const std::complex<double> pre = std::polar(1.0 / s, -2.0 * t * t / s * phi_t);
  return pre * Vec3c(std::polar(t, theta + s * phi_t), std::polar(t, -(theta - s * phi_t)), 1.0);
}

void SphereSurface::validate() const {
  domain.validate();
  if (u.size() != domain.size()) throw std::invalid_argument("SphereSurface: node count does not match the grid");
  for (const Vec3c& w : u)
    if (!w.allFinite() || std::abs(w.norm() - 1.0) > 1e-12) throw DomainError("SphereSurface: node off the unit sphere");
}

SphereSurface appendix_surface(double t, const GridDomain& grid) {
  if (!(t > 0.0 && t <= 1.0)) throw DomainError("appendix_surface: t must lie in (0, 1]");
  grid.validate();
  // A periodic direction must be a period of the map.
  for (int dir = 0; dir < 2; ++dir) {
    if (!grid.periodic(dir)) continue;
    const Vec2 e = dir == 0 ? grid.edge1 : grid.edge2;
    for (const Vec2& x : {Vec2(grid.origin), Vec2(grid.origin + Vec2(0.37, 1.13))}) {
      const Vec2 y = x + e;
      if ((appendix_point(t, y[0], y[1]) - appendix_point(t, x[0], x[1])).norm() > 1e-9)
        throw DomainError("appendix_surface: grid period is not a period of u_t");
    }
  }
  SphereSurface s;
  s.domain = grid;
  s.t = t;
  s.gamma = std::sqrt(1.0 + 2.0 * t * t);
  s.u.resize(grid.size());
  for (int i = 0; i < grid.n1; ++i)
    for (int j = 0; j < grid.n2; ++j) {
      const Vec2 x = grid.node(i, j);
      s.u[grid.index(i, j)] = appendix_point(t, x[0], x[1]);
    }
  s.validate();
  return s;
}

SphereSurface appendix_torus(int k, const GridDomain& grid) {
  const double g = appendix_gamma(k);
  const double l2 = 2.0 * kPi * k / g;
  const bool ok = grid.topology == Topology::torus && (grid.edge1 - Vec2(2.0 * kPi, 0.0)).norm() <= 1e-12 * 2.0 * kPi &&
                  (grid.edge2 - Vec2(0.0, l2)).norm() <= 1e-12 * l2;
  if (!ok) throw DomainError("appendix_torus: grid must be the torus with periods (2 pi, 2 pi k / gamma_k)");
  SphereSurface s = appendix_surface(appendix_t(k), grid);
  s.k = k;
  s.gamma = g;
  return s;
}

GridDomain appendix_grid(int k, int m) {
  return GridDomain::torus(Vec2::Zero(), Vec2(2.0 * kPi, 0.0), Vec2(0.0, 2.0 * kPi * k / appendix_gamma(k)), m, m * k);
}

SphereTangents sphere_tangents(const SphereSurface& s) {
  const GridDomain& d = s.domain;
  const Eigen::Matrix2d sinv = d.step_matrix().inverse();
  auto get = [&](int i, int j) {
    int t = 0;
    if (d.periodic(0)) i = wrap_index(i, d.n1, t);
    if (d.periodic(1)) j = wrap_index(j, d.n2, t);
    return s.u[d.index(i, j)];
  };
  SphereTangents out;
  out.d1.resize(d.size());
  out.d2.resize(d.size());
  parallel_for(d.size(), [&](std::size_t k) {
    const auto [i, j] = d.ij(k);
    const Vec3c di = index_derivative<Vec3c>(d, 0, i, j, get);
    const Vec3c dj = index_derivative<Vec3c>(d, 1, i, j, get);
    out.d1[k] = sinv(0, 0) * di + sinv(1, 0) * dj;
    out.d2[k] = sinv(0, 1) * di + sinv(1, 1) * dj;
  });
  return out;
}

double sphere_legendrian_residual(const SphereSurface& s) {
  const SphereTangents t = sphere_tangents(s);
  double worst = 0.0;
  for (std::size_t k = 0; k < s.u.size(); ++k) {
    const SpherePoint p(s.u[k]);
    for (const Vec3c& d : {t.d1[k], t.d2[k]}) {
      // The radial part carries no alpha; drop it so the tangency check passes.
      const Vec3c tan = d - re_inner(p.w, d) * p.w;
      worst = std::max(worst, std::abs(contact_alpha_s5(p, to_real6(tan))));
    }
  }
  return worst;
}

double sphere_conformality_residual(const SphereSurface& s) {
  const SphereTangents t = sphere_tangents(s);
  double worst = 0.0;
  for (std::size_t k = 0; k < s.u.size(); ++k) {
    const double a = t.d1[k].squaredNorm(), b = t.d2[k].squaredNorm();
    if (a + b <= 0.0) continue;
    worst = std::max(worst, (std::abs(a - b) + 2.0 * std::abs(re_inner(t.d1[k], t.d2[k]))) / (a + b));
  }
  return worst;
}

double sphere_frame_residual(const SphereSurface& s) {
  const SphereTangents t = sphere_tangents(s);
  double worst = 0.0;
  for (std::size_t k = 0; k < s.u.size(); ++k)
    worst = std::max(worst, s5_plane_residual(SpherePoint(s.u[k]), to_real6(t.d1[k]), to_real6(t.d2[k])));
  return worst;
}

double sphere_area(const SphereSurface& s, const NodeMask& mask) {
  const SphereTangents t = sphere_tangents(s);
  std::vector<double> e(s.u.size(), 0.0);
  for (std::size_t k = 0; k < s.u.size(); ++k) {
    const auto [i, j] = s.domain.ij(k);
    if (mask(i, j)) e[k] = 0.5 * (t.d1[k].squaredNorm() + t.d2[k].squaredNorm()) * s.domain.weight(i, j);
  }
  return deterministic_sum(e);
}

double max_fiber_distance(const SphereSurface& s) {
  double worst = 0.0;
  for (const Vec3c& w : s.u) worst = std::max(worst, fiber_distance(SpherePoint(w)));
  return worst;
}

MetricCheck appendix_metric_check(double t, double h, int samples, unsigned seed) {
  if (!(t > 0.0 && t <= 1.0)) throw DomainError("appendix_metric_check: t must lie in (0, 1]");
  if (!(h > 0.0) || samples < 1) throw std::invalid_argument("appendix_metric_check: need h > 0 and samples >= 1");
  const double q = 1.0 + 2.0 * t * t, s = std::sqrt(q);
  auto u = [&](double th, double ph) { return appendix_point(t, th, ph / s); };
  MetricCheck m;
  m.e11 = 2.0 * t * t / q;
  m.e22 = 2.0 * t * t / (q * q);
  m.e12 = 0.0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  for (int n = 0; n < samples; ++n) {
    const double th = ang(rng), ph = ang(rng);
    const Vec3c a = (u(th + h, ph) - u(th - h, ph)) / (2.0 * h);
    const Vec3c b = (u(th, ph + h) - u(th, ph - h)) / (2.0 * h);
    const double g11 = a.squaredNorm(), g22 = b.squaredNorm(), g12 = re_inner(a, b);
    m.g11 += g11 / samples;
    m.g22 += g22 / samples;
    m.g12 += g12 / samples;
    m.max_error = std::max({m.max_error, std::abs(g11 - m.e11), std::abs(g22 - m.e22), std::abs(g12)});
  }
  return m;
}

double appendix_area(int k, const GridDomain& grid, const NodeMask& mask) {
  return sphere_area(appendix_torus(k, grid), mask);
}

double sphere_pde_residual(const SphereSurface& s, const Vec2& grad_beta) {
  const GridDomain& d = s.domain;
  if (!d.orthogonal_steps()) throw DomainError("sphere_pde_residual: grid steps must be orthogonal");
  auto wrapped = [&d](int i, int j) {
    int t = 0;
    if (d.periodic(0)) i = wrap_index(i, d.n1, t);
    if (d.periodic(1)) j = wrap_index(j, d.n2, t);
    return d.index(i, j);
  };
  std::vector<double> res(d.size(), 0.0);
  parallel_for(d.size(), [&](std::size_t k) {
    const auto [i, j] = d.ij(k);
    if (!has_both_neighbours(d, i, j)) return;
    Vec3c lap = Vec3c::Zero(), adv = Vec3c::Zero();
    double grad2 = 0.0;
    for (int dir = 0; dir < 2; ++dir) {
      const Vec2 step = d.step(dir);
      const double len = step.norm();
      const Vec3c& up = s.u[dir == 0 ? wrapped(i + 1, j) : wrapped(i, j + 1)];
      const Vec3c& um = s.u[dir == 0 ? wrapped(i - 1, j) : wrapped(i, j - 1)];
      const Vec3c du = (up - um) / (2.0 * len);
      lap += (up - 2.0 * s.u[k] + um) / (len * len);
      adv += grad_beta.dot(step / len) * du;
      grad2 += du.squaredNorm();
    }
    res[k] = (lap + s.u[k] * grad2 + std::complex<double>(0, 1) * adv).norm();
  });
  return *std::max_element(res.begin(), res.end());
}

double appendix_pde_residual(double t, const GridDomain& grid) {
  return sphere_pde_residual(appendix_surface(t, grid), Vec2(0.0, (2.0 * t * t - 2.0) / std::sqrt(1.0 + 2.0 * t * t)));
}

Mat6 limit_plane(double tau, double eta, double alpha) {
  const std::complex<double> r = std::polar(1.0, alpha);
  const double c = 1.0 / std::sqrt(2.0);
  const Vec3c a = r * c * Vec3c({-std::sin(tau), std::cos(tau)}, {std::sin(eta), -std::cos(eta)}, 0.0);
  const Vec3c b = r * c * Vec3c({-std::sin(tau), std::cos(tau)}, {-std::sin(eta), std::cos(eta)}, 0.0);
  const Vec6 x = to_real6(a), y = to_real6(b);
  return x * x.transpose() + y * y.transpose();
}

namespace {

std::vector<TestObservable> all_observables() {
  const Mat6 ref = limit_plane(0.4, 1.1, 0.5);
  return {
      {"unit", [](const Mat6&, const Vec3c&) { return 1.0; }},
      {"w3_modulus2", [](const Mat6&, const Vec3c& w) { return std::norm(w[2]); }},
      {"p11_phase", [](const Mat6& p, const Vec3c& w) { return p(0, 0) * (1.0 + std::cos(wrapped_arg(w))); }},
      {"fiber_tilt", [](const Mat6& p, const Vec3c&) { return p(4, 4) + p(5, 5); }},
      {"hs_gaussian", [ref](const Mat6& p, const Vec3c&) { return std::exp(-(p - ref).squaredNorm()); }},
      {"fiber_sin", [](const Mat6&, const Vec3c& w) { return std::sin(wrapped_arg(w)); }},
      // cos^2 of twice the angle between the w1 and w2 lines of the plane.
      {"angle_diff_sq",
       [](const Mat6& p, const Vec3c&) {
         const double c = (p(0, 0) - p(1, 1)) * (p(2, 2) - p(3, 3)) + 4.0 * p(0, 1) * p(2, 3);
         return c * c;
       }},
      {"p15_abs", [](const Mat6& p, const Vec3c&) { return std::abs(p(0, 4)); }},
  };
}

}  // namespace

std::vector<TestObservable> default_observable_panel() {
  std::vector<TestObservable> all = all_observables();
  all.resize(5);
  return all;
}

std::vector<std::string> observable_ids() {
  std::vector<std::string> ids;
  for (const TestObservable& o : all_observables()) ids.push_back(o.id);
  return ids;
}

TestObservable observable_by_id(const std::string& id) {
  for (TestObservable& o : all_observables())
    if (o.id == id) return o;
  throw std::invalid_argument("unknown observable '" + id + "'");
}

namespace {

std::vector<double> pair_panel(int k, const std::vector<TestObservable>& panel, const GridDomain& grid) {
  const SphereSurface s = appendix_torus(k, grid);
  const SphereTangents t = sphere_tangents(s);
  const std::size_t n = s.u.size();
  std::vector<std::vector<double>> terms(panel.size(), std::vector<double>(n));
  parallel_for(n, [&](std::size_t m) {
    const auto [i, j] = s.domain.ij(m);
    const double w = 0.5 * (t.d1[m].squaredNorm() + t.d2[m].squaredNorm()) * s.domain.weight(i, j);
    const Mat6 p = plane_projector(to_real6(t.d1[m]), to_real6(t.d2[m]));
    for (std::size_t o = 0; o < panel.size(); ++o) terms[o][m] = w * panel[o](p, s.u[m]);
  });
  std::vector<double> out;
  for (const auto& v : terms) out.push_back(deterministic_sum(v));
  return out;
}

}  // namespace

double counterexample_pairing(int k, const TestObservable& phi, const GridDomain& grid) {
  return pair_panel(k, {phi}, grid)[0];
}

double limit_pairing(const TestObservable& phi, int n) {
  if (n < 4) throw std::invalid_argument("limit_pairing: n must be at least 4");
  const double h = 2.0 * kPi / n;
  std::vector<double> terms(static_cast<std::size_t>(n) * n * n);
  parallel_for(terms.size(), [&](std::size_t m) {
    const int a = static_cast<int>(m % n), e = static_cast<int>((m / n) % n), t = static_cast<int>(m / (n * n));
    const double alpha = a * h;
    terms[m] = phi(limit_plane(t * h, e * h, alpha), Vec3c(0.0, 0.0, std::polar(1.0, alpha)));
  });
  return deterministic_sum(terms) * h * h * h * 2.0 * kPi / (4.0 * kPi * kPi);
}

CounterexampleStudy counterexample_study(const std::vector<int>& ks, const std::vector<TestObservable>& panel, int m,
                                         int limit_n) {
  if (ks.empty() || panel.empty()) throw std::invalid_argument("counterexample_study: need k values and observables");
  CounterexampleStudy st;
  std::vector<double> limits;
  for (const TestObservable& o : panel) {
    st.observables.push_back(o.id);
    limits.push_back(limit_pairing(o, limit_n));
  }
  std::vector<std::vector<double>> errs(panel.size());
  for (int k : ks) {
    const std::vector<double> p = pair_panel(k, panel, appendix_grid(k, m));
    for (std::size_t o = 0; o < panel.size(); ++o) {
      st.rows.push_back({k, panel[o].id, p[o], limits[o], std::abs(p[o] - limits[o])});
      errs[o].push_back(std::abs(p[o] - limits[o]));
    }
  }
  std::vector<double> kd(ks.begin(), ks.end());
  for (std::size_t o = 0; o < panel.size(); ++o)
    st.slopes.push_back(ks.size() >= 2 ? loglog_slope(kd, errs[o]) : std::nan(""));
  return st;
}

}  // namespace legvar
