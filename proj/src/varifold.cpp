#include "legvar/varifold.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "legvar/parallel.hpp"

namespace legvar {

double DiscreteVarifold::mass() const {
  std::vector<double> w(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) w[i] = samples[i].weight;
  return deterministic_sum(w);
}

void DiscreteVarifold::validate() const {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double w = samples[i].weight;
    if (!std::isfinite(w) || w <= 0.0)
      throw DomainError("DiscreteVarifold: sample " + std::to_string(i) + " has invalid weight");
    if (!samples[i].plane.base.finite())
      throw DomainError("DiscreteVarifold: sample " + std::to_string(i) + " has non-finite base");
  }
}

void DiscreteVarifold::append(const DiscreteVarifold& o) {
  samples.insert(samples.end(), o.samples.begin(), o.samples.end());
}

DiscreteVarifold DiscreteVarifold::translated(const HPoint& q) const {
  DiscreteVarifold out = *this;
  for (auto& s : out.samples) s.plane = left_translate(q, s.plane);
  return out;
}

DiscreteVarifold DiscreteVarifold::dilated(double t) const {
  DiscreteVarifold out = *this;
  for (auto& s : out.samples) {
    s.plane.base = dilate(t, s.plane.base);
    s.plane.z1.base = s.plane.z2.base = s.plane.base;
    s.weight *= t * t;
  }
  return out;
}

double DiscreteVarifold::median_spacing(std::size_t probes) const {
  const std::size_t n = samples.size();
  if (n < 2) return 0.0;
  const std::size_t m = std::min(probes, n);
  std::vector<double> nearest(m);
  parallel_for(m, [&](std::size_t k) {
    const std::size_t i = (k * n) / m;
    const HPoint pi = group_inv(samples[i].plane.base);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = gauge(group_mul(pi, samples[j].plane.base));
      if (d > 0.0) best = std::min(best, d);
    }
    nearest[k] = best;
  });
  std::nth_element(nearest.begin(), nearest.begin() + m / 2, nearest.end());
  return nearest[m / 2];
}

ThetaTerms capital_theta_terms(const DiscreteVarifold& v, const HPoint& q, double a,
                               const CutoffProfile& chi) {
  if (!(a > 0.0)) throw DomainError("capital_theta: radius must be positive");
  const std::size_t n = v.samples.size();
  std::vector<double> t1(n, 0.0), t2(n, 0.0), t3(n, 0.0);
  const HPoint qi = group_inv(q);
  parallel_for(n, [&](std::size_t i) {
    const VarifoldSample& s = v.samples[i];
    const HPoint x = group_mul(qi, s.plane.base);
    const double r = gauge(x);
    // chi'(r/a) vanishes outside (a, 2a); this also skips r = 0.
    if (!(r > a && r < 2.0 * a)) return;
    LegendrianPlane pl = s.plane;
    pl.base = x;
    const double dchi = chi.dchi(r / a) / a;
    const double d2chi = chi.d2chi(r / a) / (a * a);
    const double r3 = r * r * r, r4 = r3 * r;
    const double as = arctan_sigma(x);
    const Vec2 g_r = plane_gradient_of(gauge_gradient(x), pl);
    const Vec2 g_as = plane_gradient_of(arctan_sigma_gradient(x), pl);
    const double h = dchi / r3;
    const double dh = -3.0 * dchi / r4 + d2chi / r3;
    t1[i] = -s.weight * g_r.squaredNorm() / r * dchi;
    t2[i] = -s.weight * (2.0 * x.phi / r3) * dchi * as;
    t3[i] = 0.25 * s.weight * r4 * g_as.dot(dh * as * g_r + h * g_as);
  });
  return {deterministic_sum(t1), deterministic_sum(t2), deterministic_sum(t3)};
}

double capital_theta(const DiscreteVarifold& v, const HPoint& q, double a, const CutoffProfile& chi) {
  return capital_theta_terms(v, q, a, chi).total();
}

DensityReport monotonicity_scan(const DiscreteVarifold& v, const HPoint& q,
                                const std::vector<double>& radii, const CutoffProfile& chi,
                                const DensityOptions& opt) {
  DensityReport rep;
  rep.center = q;
  rep.spacing = opt.spacing >= 0.0 ? opt.spacing : v.median_spacing();
  std::vector<double> sorted = radii;
  std::sort(sorted.begin(), sorted.end());
  for (double a : sorted) {
    if (!(a > 0.0)) throw DomainError("monotonicity_scan: radii must be positive");
    if (a < opt.floor_factor * rep.spacing) {
      rep.skipped_radii.push_back(a);
      continue;
    }
    const ThetaTerms t = capital_theta_terms(v, q, a, chi);
    rep.radii.push_back(a);
    rep.theta_values.push_back(t.total());
    rep.limit_values.push_back(t.limit());
  }
  if (rep.theta_values.empty()) return rep;
  const auto [lo, hi] = std::minmax_element(rep.theta_values.begin(), rep.theta_values.end());
  rep.spread = *hi - *lo;
  rep.smallest_radius_value = rep.theta_values.front();
  for (std::size_t i = 0; i + 1 < rep.theta_values.size(); ++i)
    rep.monotonicity_violation =
        std::max(rep.monotonicity_violation, rep.theta_values[i] - rep.theta_values[i + 1]);
  const double top = std::abs(rep.theta_values.back());
  rep.relative_violation = top > 0.0 ? rep.monotonicity_violation / top : rep.monotonicity_violation;
  return rep;
}

PowerFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  PowerFit best{0, 0, 0, std::numeric_limits<double>::infinity()};
  for (int k = 0; k <= 150; ++k) {
    const double alpha = 0.5 + 1.5 * k / 150.0;
    Eigen::MatrixXd a(n, 2);
    Eigen::VectorXd b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a(i, 0) = 1.0;
      a(i, 1) = std::pow(x[i], alpha);
      b[i] = y[i];
    }
    const Eigen::Vector2d sol = a.colPivHouseholderQr().solve(b);
    const double rms = std::sqrt((a * sol - b).squaredNorm() / n);
    if (rms < best.rms) best = {sol[0], sol[1], alpha, rms};
  }
  return best;
}

DensityReport density(const DiscreteVarifold& v, const HPoint& q, const CutoffProfile& chi,
                      const std::vector<double>& radii, const DensityOptions& opt) {
  DensityReport rep = monotonicity_scan(v, q, radii, chi, opt);
  if (rep.radii.size() < 3)
    throw DiagnosticError("density: fewer than 3 radii above the sampling floor " +
                          std::to_string(opt.floor_factor * rep.spacing));
  std::size_t m = rep.radii.size();
  if (opt.fit_count >= 3) m = std::min(m, opt.fit_count);
  const std::vector<double> x(rep.radii.begin(), rep.radii.begin() + m);
  const std::vector<double> y(rep.theta_values.begin(), rep.theta_values.begin() + m);
  const PowerFit fit = fit_power_law(x, y);
  rep.extrapolated_density = fit.theta;
  rep.fit_alpha = fit.alpha;
  rep.fit_c = fit.c;
  return rep;
}

double stationarity_pairing(const DiscreteVarifold& v, const ScalarField& f) {
  std::vector<double> t(v.samples.size());
  parallel_for(t.size(), [&](std::size_t i) {
    t[i] = v.samples[i].weight * plane_divergence(f, v.samples[i].plane);
  });
  return deterministic_sum(t);
}

MassRatio mass_ratio_check(const DiscreteVarifold& v, const HPoint& q, double r, double s) {
  if (!(r > 0.0) || !(r <= 0.5 * s)) throw DomainError("mass_ratio_check: requires 0 < r <= s/2");
  const HPoint qi = group_inv(q);
  std::vector<double> ball(v.size(), 0.0), ann(v.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = gauge(group_mul(qi, v.samples[i].plane.base));
    if (d < r) ball[i] = v.samples[i].weight;
    if (d >= s && d < 2.0 * s) ann[i] = v.samples[i].weight;
  }
  MassRatio m;
  m.ball_mass = deterministic_sum(ball);
  m.annulus_mass = deterministic_sum(ann);
  if (m.annulus_mass <= 0.0) {
    m.degenerate = true;
    m.ratio = m.ball_mass > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return m;
  }
  m.ratio = (m.ball_mass / (r * r)) / (m.annulus_mass / (s * s));
  return m;
}

double arctan_sigma_dirichlet(const DiscreteVarifold& v, const HPoint& q, double b) {
  const HPoint qi = group_inv(q);
  std::vector<double> t(v.size(), 0.0);
  parallel_for(v.size(), [&](std::size_t i) {
    const HPoint x = group_mul(qi, v.samples[i].plane.base);
    const double r = gauge(x);
    if (!(r > 0.0 && r < b)) return;
    LegendrianPlane pl = v.samples[i].plane;
    pl.base = x;
    t[i] = v.samples[i].weight * plane_gradient_of(arctan_sigma_gradient(x), pl).squaredNorm();
  });
  return deterministic_sum(t);
}

DiscreteVarifold flat_plane_varifold(const HPoint& q, const Eigen::Matrix2cd& u, double half_width,
                                     int n, double mult) {
  if (n < 2) throw std::invalid_argument("flat_plane_varifold: n must be at least 2");
  const LegendrianPlane shape = plane_from_unitary(HPoint(), u);
  const double h = 2.0 * half_width / (n - 1);
  DiscreteVarifold v;
  v.samples.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double s = -half_width + i * h, t = -half_width + j * h;
      double w = h * h * mult;
      if (i == 0 || i == n - 1) w *= 0.5;
      if (j == 0 || j == n - 1) w *= 0.5;
      // The Lagrangian subspace is an abelian subgroup, so q * (s Z1 + t Z2, 0) lies on the plane.
      const HPoint p = group_mul(q, HPoint(s * shape.h1() + t * shape.h2(), 0.0));
      v.samples.push_back({LegendrianPlane(p, shape.h1(), shape.h2()), w});
    }
  }
  return v;
}

DiscreteVarifold clifford_blowdown_varifold(double phi_max, int n_phi, int n_ab) {
  if (n_phi < 3 || n_ab < 1) throw std::invalid_argument("clifford_blowdown_varifold: bad sizes");
  const double dphi = 2.0 * phi_max / (n_phi - 1);
  const double two_pi = 2.0 * std::numbers::pi;
  DiscreteVarifold v;
  for (int k = 0; k < n_phi; ++k) {
    const double phi = -phi_max + k * dphi;
    if (phi == 0.0) continue;  // the center itself carries no Theta contribution
    double w = two_pi * dphi / (n_ab * n_ab);
    if (k == 0 || k == n_phi - 1) w *= 0.5;
    for (int i = 0; i < n_ab; ++i)
      for (int j = 0; j < n_ab; ++j)
        v.samples.push_back({plane_ab(HPoint(0, 0, 0, 0, phi), two_pi * i / n_ab, two_pi * j / n_ab), w});
  }
  return v;
}

DiscreteVarifold tilted_strip_varifold(double kappa, double half_width, int n) {
  if (n < 2) throw std::invalid_argument("tilted_strip_varifold: n must be at least 2");
  const Vec4 e1(1, 0, 0, 0), e3(0, 0, 1, 0);
  const Vec4 u(std::cos(kappa), std::sin(kappa), 0, 0);
  const double h = half_width / (n - 1);
  DiscreteVarifold v;
  for (int side = 0; side < 2; ++side) {
    const Vec4 dir = side == 0 ? Vec4(-e1) : u;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < 2 * n - 1; ++j) {
        const double s = i * h, t = -half_width + j * h;
        double w = h * h;
        if (i == 0 || i == n - 1) w *= 0.5;
        if (j == 0 || j == 2 * n - 2) w *= 0.5;
        v.samples.push_back({LegendrianPlane(HPoint(s * dir + t * e3, 0.0), dir, e3), w});
      }
    }
  }
  return v;
}

}  // namespace legvar
