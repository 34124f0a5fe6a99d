#include "legvar/identities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "legvar/hamiltonian.hpp"

namespace legvar {

bool IdentitySuite::all_pass() const {
  return std::all_of(results.begin(), results.end(), [](const IdentityResult& r) { return r.pass; });
}

std::vector<std::string> IdentitySuite::failing() const {
  std::vector<std::string> out;
  for (const IdentityResult& r : results)
    if (!r.pass) out.push_back(r.name);
  return out;
}

namespace {

struct Sampler {
  std::mt19937_64 rng;
  std::normal_distribution<double> n01{0.0, 1.0};
  std::uniform_real_distribution<double> u01{0.0, 1.0};

  HPoint point(double scale = 1.0) {
    const double a = n01(rng), b = n01(rng), c = n01(rng), d = n01(rng), e = n01(rng);
    return {scale * Vec4(a, b, c, d), scale * e};
  }
  // Point at gauge distance in (lo, hi) from the origin.
  HPoint shell(double lo, double hi) {
    const HPoint p = point();
    return dilate((lo + (hi - lo) * u01(rng)) / gauge(p), p);
  }
};

double pdist(const HPoint& a, const HPoint& b) { return (a.coords() - b.coords()).norm(); }

}  // namespace

IdentitySuite run_identity_suite(const IdentityOptions& opt) {
  IdentitySuite suite;
  const std::size_t n = opt.samples;
  auto run = [&](const std::string& name, double tol, unsigned salt, const std::function<double(Sampler&, std::size_t)>& f) {
    Sampler s;
    s.rng.seed(opt.seed * 1000003ULL + salt);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = f(s, i);
      worst = std::isnan(r) ? INFINITY : std::max(worst, r);
    }
    const double t = opt.tol_override >= 0.0 ? opt.tol_override : tol;
    suite.results.push_back({name, worst, t, n, worst <= t});
  };

  run("group_associativity", 1e-12, 1, [](Sampler& s, std::size_t) {
    const HPoint p = s.point(), q = s.point(), r = s.point();
    const HPoint a = group_mul(group_mul(p, q), r);
    return pdist(a, group_mul(p, group_mul(q, r))) / (1.0 + a.coords().norm());
  });
  run("group_inverse", 1e-12, 2, [](Sampler& s, std::size_t) {
    const HPoint p = s.point();
    return std::max(pdist(group_mul(p, group_inv(p)), HPoint()), pdist(group_mul(group_inv(p), p), HPoint()));
  });
  run("group_identity", 1e-15, 3, [](Sampler& s, std::size_t) {
    const HPoint p = s.point();
    return std::max(pdist(group_mul(p, HPoint()), p), pdist(group_mul(HPoint(), p), p));
  });
  run("koranyi_definiteness", 1e-15, 4, [](Sampler& s, std::size_t) {
    const HPoint p = s.point(), q = s.point();
    // d(p, p) must vanish and distinct points must be at positive distance.
    return koranyi_dist(p, p) + (koranyi_dist(p, q) > 0.0 ? 0.0 : 1.0);
  });
  run("koranyi_symmetry", 1e-12, 5, [](Sampler& s, std::size_t) {
    const HPoint p = s.point(), q = s.point();
    const double d = koranyi_dist(p, q);
    return std::abs(d - koranyi_dist(q, p)) / (1.0 + d);
  });
  run("koranyi_triangle", 1e-12, 6, [](Sampler& s, std::size_t) {
    const HPoint p = s.point(), q = s.point(), r = s.point();
    return std::max(0.0, koranyi_dist(p, r) - koranyi_dist(p, q) - koranyi_dist(q, r));
  });
  run("koranyi_left_invariance", 1e-10, 7, [](Sampler& s, std::size_t) {
    const HPoint p = s.point(), q = s.point(), g = s.point(2.0);
    const double d = koranyi_dist(p, q);
    return std::abs(koranyi_dist(group_mul(g, p), group_mul(g, q)) - d) / (1.0 + d);
  });
  run("koranyi_right_translation_bound", 1e-12, 8, [](Sampler& s, std::size_t) {
    const HPoint p = s.point(), q = s.point(), g = s.point(2.0);
    const double d = koranyi_dist(p, q);
    return std::max(0.0, koranyi_dist(group_mul(p, g), group_mul(q, g)) - d - 2.0 * std::sqrt(g.rho() * d));
  });
  run("frame_orthonormality", 1e-12, 9, [](Sampler& s, std::size_t) {
    const HPoint p = s.point(3.0);
    const auto fr = frame_at(p);
    double worst = std::abs(contact_alpha(p, fr[4].ambient()) + 1.0);
    for (int a = 0; a < 5; ++a) {
      if (a < 4) worst = std::max(worst, std::abs(contact_alpha(p, fr[a].ambient())));
      for (int b = 0; b < 5; ++b) {
        const double g = frame_coeffs(p, fr[a].ambient()).dot(frame_coeffs(p, fr[b].ambient()));
        worst = std::max(worst, std::abs(g - (a == b ? 1.0 : 0.0)));
      }
    }
    return worst;
  });
  run("plane_gradient_z_norm", 1e-12, 10, [](Sampler& s, std::size_t i) {
    return random_legendrian_plane(s.point(), i).residuals().grad_z;
  });

  const ScalarField r_field = translated_field(BasicField::gauge, HPoint());
  const ScalarField sigma = ScalarField::from_jet([](const HCoords<Jet5>& x) { return 2.0 * x[4] * reciprocal(rho2_of(x)); });
  run("gauge_gradient_norm", 1e-10, 11, [&](Sampler& s, std::size_t) {
    const HPoint p = s.point();
    const double rr = gauge(p), want = p.rho2() / (rr * rr);
    const double sg = 2.0 * p.phi / p.rho2();
    return std::max(std::abs(horizontal_gradient(r_field, p).norm2() - want), std::abs(want - 1.0 / std::sqrt(1.0 + sg * sg))) /
           (1.0 + want);
  });
  run("gauge_sigma_gradients", 1e-10, 12, [&](Sampler& s, std::size_t) {
    const HPoint p = s.point();
    const double rr = gauge(p), rho2 = p.rho2();
    const Vec4 lhs = rr * rr * rr * jh(horizontal_gradient(r_field, p).horizontal());
    const Vec4 rhs = 0.5 * rho2 * rho2 * horizontal_gradient(sigma, p).horizontal();
    return (lhs - rhs).norm() / (1.0 + rhs.norm());
  });
  run("plane_gradient_balance", 1e-10, 13, [](Sampler& s, std::size_t i) {
    const LegendrianPlane pl = random_legendrian_plane(s.point(), i);
    return plane_gradient_balance_residual(pl) / (1.0 + pl.base.rho2());
  });
  run("gauge_ratio_gradients", 1e-8, 14, [](Sampler& s, std::size_t i) { return gauge_ratio_gradient_residual(random_legendrian_plane(s.point(), i)); });

  for (CutoffKind kind : {CutoffKind::poly, CutoffKind::bump}) {
    const CutoffProfile chi(kind);
    run("monotonicity_identity_" + chi.name(), 1e-8, kind == CutoffKind::poly ? 15 : 16, [&](Sampler& s, std::size_t i) {
      const HPoint q = s.point();
      const double a = 0.5 + (i % 7) * 0.2, eps = 0.1 * a;
      const HPoint x = s.shell(0.5 * eps, 2.2 * a);
      const LegendrianPlane pl = random_legendrian_plane(group_mul(q, x), i);
      return std::max(monotonicity_identity_residual(pl, a, eps, chi, q), monotonicity_divergence_residual(pl, a, eps, chi, q));
    });
  }
  return suite;
}

}  // namespace legvar
