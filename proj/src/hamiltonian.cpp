#include "legvar/hamiltonian.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <random>
#include <type_traits>

namespace legvar {

namespace {

HTangent horizontal_tangent(const HPoint& p, const Vec4& h) {
  HTangent t;
  t.base = p;
  t.coeffs.head<4>() = h;
  t.coeffs[4] = 0.0;
  return t;
}

// c_a with X_a = d_a + c_a d/dphi for the horizontal frame.
Vec4 vertical_shift(const HPoint& p) { return {-p.z[1], p.z[0], -p.z[3], p.z[2]}; }

Vec2 tangential(const Vec4& horiz_derivs, const LegendrianPlane& pl) {
  return {horiz_derivs.dot(pl.h1()), horiz_derivs.dot(pl.h2())};
}

// Tangential gradients of rho^2 and phi, which only depend on the base.
Vec2 grad_rho2(const LegendrianPlane& pl) { return tangential(2.0 * pl.base.z, pl); }
Vec2 grad_phi(const LegendrianPlane& pl) { return tangential(vertical_shift(pl.base), pl); }

struct RadialJet {
  double g_r, g_phi;
  Vec2 grad_g_r, grad_g_phi;  // tangential
};

RadialJet radial_jet(const RadialFn& g, const LegendrianPlane& pl) {
  const Jet<2> j = g(Jet<2>::variable(pl.base.rho2(), 0), Jet<2>::variable(pl.base.phi, 1));
  const Vec2 gr = grad_rho2(pl), gp = grad_phi(pl);
  RadialJet out;
  out.g_r = j.g[0];
  out.g_phi = j.g[1];
  out.grad_g_r = j.h(0, 0) * gr + j.h(0, 1) * gp;
  out.grad_g_phi = j.h(1, 0) * gr + j.h(1, 1) * gp;
  return out;
}

double grad_z_norm2(const LegendrianPlane& pl) { return pl.h1().squaredNorm() + pl.h2().squaredNorm(); }

template <typename T>
T monotonicity_profile(const T& r, double a, double eps, const CutoffProfile& chi) {
  const double ra = value_of(r) / a, re = value_of(r) / eps;
  if constexpr (std::is_same_v<T, double>) {
    return chi.chi(ra) - chi.chi(re);
  } else {
    return chain(r, chi.chi(ra) - chi.chi(re), chi.dchi(ra) / a - chi.dchi(re) / eps,
                 chi.d2chi(ra) / (a * a) - chi.d2chi(re) / (eps * eps));
  }
}

RadialFn monotonicity_radial(double a, double eps, const CutoffProfile& chi) {
  return [a, eps, chi](const Jet<2>& r2, const Jet<2>& phi) {
    const Jet<2> r = pow(r2 * r2 + 4.0 * phi * phi, 0.25);
    if (r.v <= eps || r.v >= 2.0 * a) return Jet<2>(0.0);
    return monotonicity_profile(r, a, eps, chi) * atan2(2.0 * phi, r2);
  };
}

void check_scales(double a, double eps) {
  if (!(eps > 0.0) || !(eps < a)) throw DomainError("monotonicity Hamiltonian requires 0 < eps < a");
}

}  // namespace

LegendrianPlane::LegendrianPlane(const HPoint& p, const Vec4& a, const Vec4& b)
    : base(p), z1(horizontal_tangent(p, a)), z2(horizontal_tangent(p, b)) {}

double LegendrianPlane::Residuals::max() const {
  return std::max({horizontal, orthonormal, lagrangian, grad_z});
}

LegendrianPlane::Residuals LegendrianPlane::residuals() const {
  Residuals r;
  r.horizontal = std::max(std::abs(z1.coeffs[4]), std::abs(z2.coeffs[4]));
  r.orthonormal = std::max({std::abs(z1.norm2() - 1.0), std::abs(z2.norm2() - 1.0),
                            std::abs(z1.coeffs.dot(z2.coeffs))});
  r.lagrangian = std::abs(jh(h1()).dot(h2()));
  r.grad_z = std::abs(grad_z_norm2(*this) - 2.0);
  return r;
}

void LegendrianPlane::validate(double tol) const {
  if (!base.finite()) throw DomainError("LegendrianPlane: non-finite base");
  const Residuals r = residuals();
  if (r.horizontal > tol) throw DomainError("LegendrianPlane: frame is not horizontal");
  if (r.orthonormal > tol) throw DomainError("LegendrianPlane: frame is not orthonormal");
  if (r.lagrangian > tol) throw DomainError("LegendrianPlane: plane is not Lagrangian");
  if (r.grad_z > tol) throw DomainError("LegendrianPlane: |grad z|^2 differs from 2");
}

LegendrianPlane LegendrianPlane::rebased(double t) const {
  const double c = std::cos(t), s = std::sin(t);
  LegendrianPlane out = *this;
  out.z1.coeffs = c * z1.coeffs + s * z2.coeffs;
  out.z2.coeffs = -s * z1.coeffs + c * z2.coeffs;
  return out;
}

Mat5 LegendrianPlane::projector() const {
  return z1.coeffs * z1.coeffs.transpose() + z2.coeffs * z2.coeffs.transpose();
}

LegendrianPlane plane_from_unitary(const HPoint& p, const Eigen::Matrix2cd& u) {
  return LegendrianPlane(p, to_real(u.col(0)), to_real(u.col(1)));
}

LegendrianPlane plane_ab(const HPoint& p, double a, double b) {
  return LegendrianPlane(p, Vec4(std::cos(a), std::sin(a), 0, 0), Vec4(0, 0, std::cos(b), std::sin(b)));
}

Eigen::Matrix2cd haar_unitary(unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  Eigen::Matrix2cd g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = {n01(rng), n01(rng)};
  Eigen::HouseholderQR<Eigen::Matrix2cd> qr(g);
  Eigen::Matrix2cd q = qr.householderQ();
  const Eigen::Matrix2cd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 2; ++j) {
    const double m = std::abs(r(j, j));
    if (m > 0.0) q.col(j) *= r(j, j) / m;
  }
  return q;
}

LegendrianPlane random_legendrian_plane(const HPoint& p, unsigned long long seed) {
  return plane_from_unitary(p, haar_unitary(seed));
}

LegendrianPlane left_translate(const HPoint& q, const LegendrianPlane& pl) {
  LegendrianPlane out = pl;
  out.base = group_mul(q, pl.base);
  out.z1.base = out.base;
  out.z2.base = out.base;
  return out;
}

HTangent horizontal_gradient(const ScalarField& f, const HPoint& p) {
  const FieldJet j = f.derivatives(p);
  const Vec5 d = frame_derivatives(p, j.grad);
  return horizontal_tangent(p, d.head<4>());
}

Vec2 plane_gradient_of(const Vec5& ambient_grad, const LegendrianPlane& pl) {
  return tangential(frame_derivatives(pl.base, ambient_grad).head<4>(), pl);
}

PlaneGradient plane_gradient(const ScalarField& f, const LegendrianPlane& pl) {
  return {pl, plane_gradient_of(f.derivatives(pl.base).grad, pl)};
}

HTangent hamiltonian_vector(const ScalarField& f, const HPoint& p) {
  const FieldJet j = f.derivatives(p);
  const Vec5 d = frame_derivatives(p, j.grad);
  HTangent w;
  w.base = p;
  w.coeffs << -0.5 * d[1], 0.5 * d[0], -0.5 * d[3], 0.5 * d[2], -j.value;
  return w;
}

Vec5 hamiltonian_vector_expansion(const ScalarField& f, const HPoint& p) {
  const FieldJet j = f.derivatives(p);
  const Vec5& g = j.grad;
  Vec5 w2;
  w2[0] = -g[1];
  w2[1] = g[0];
  w2[2] = -g[3];
  w2[3] = g[2];
  w2.head<4>() -= g[4] * p.z;
  w2[4] = p.z.dot(g.head<4>()) - 2.0 * j.value;
  return 0.5 * w2;
}

double plane_divergence(const ScalarField& f, const LegendrianPlane& pl) {
  const HPoint& p = pl.base;
  const FieldJet j = f.derivatives(p);
  const Vec4 c = vertical_shift(p);
  // Row a: ambient gradient of the frame derivative X_a F = F_a + c_a F_phi.
  Eigen::Matrix<double, 4, 5> dd;
  for (int a = 0; a < 4; ++a) dd.row(a) = j.hess.row(a) + c[a] * j.hess.row(4);
  dd(0, 1) += -j.grad[4];
  dd(1, 0) += j.grad[4];
  dd(2, 3) += -j.grad[4];
  dd(3, 2) += j.grad[4];
  // Frame components of W: (-Y1F, X1F, -Y2F, X2F)/2.
  Eigen::Matrix<double, 4, 5> dw;
  dw.row(0) = -0.5 * dd.row(1);
  dw.row(1) = 0.5 * dd.row(0);
  dw.row(2) = -0.5 * dd.row(3);
  dw.row(3) = 0.5 * dd.row(2);
  double div = 0.0;
  for (const HTangent* z : {&pl.z1, &pl.z2}) {
    const Vec5 amb = z->ambient();
    div += (dw * amb).dot(z->horizontal());
  }
  return div;
}

double plane_divergence_radial(const RadialFn& g, const LegendrianPlane& pl) {
  const RadialJet rj = radial_jet(g, pl);
  const Vec2 gr = grad_rho2(pl), gp = grad_phi(pl);
  const double two_div = 2.0 * rj.grad_g_r.dot(gp) - grad_z_norm2(pl) * rj.g_phi -
                         0.5 * rj.grad_g_phi.dot(gr);
  return 0.5 * two_div;
}

ScalarField radial_field(const RadialFn& g) {
  return ScalarField::from_jet([g](const HCoords<Jet5>& x) {
    const Jet5 r2 = rho2_of(x);
    const Jet<2> j = g(Jet<2>::variable(r2.v, 0), Jet<2>::variable(x[4].v, 1));
    Jet5 out(j.v);
    out.g = j.g[0] * r2.g + j.g[1] * x[4].g;
    out.h = j.g[0] * r2.h + j.g[1] * x[4].h + j.h(0, 0) * r2.g * r2.g.transpose() +
            j.h(1, 1) * x[4].g * x[4].g.transpose() +
            j.h(0, 1) * (r2.g * x[4].g.transpose() + x[4].g * r2.g.transpose());
    return out;
  });
}

ScalarField monotonicity_hamiltonian(const HPoint& q, double a, double eps,
                                     const CutoffProfile& chi) {
  check_scales(a, eps);
  return ScalarField::from_jet(
      [q, a, eps, chi](const HCoords<Jet5>& x) {
        const HCoords<Jet5> y = translate_inverse(q, x);
        const double rv = gauge_of(HCoords<double>{y[0].v, y[1].v, y[2].v, y[3].v, y[4].v});
        // psi vanishes identically near the center and outside 2a.
        if (rv <= eps || rv >= 2.0 * a) return Jet5(0.0);
        const Jet5 r = gauge_of(y);
        return monotonicity_profile(r, a, eps, chi) * arctan_sigma_of(y);
      },
      "monotonicity");
}

Vec2 monotonicity_partials(const HPoint& x, double a, double eps, const CutoffProfile& chi) {
  check_scales(a, eps);
  const double r = gauge(x);
  const double r3 = r * r * r, r4 = r3 * r;
  const double psi = chi.chi(r / a) - chi.chi(r / eps);
  const double dpsi = chi.dchi(r / a) / a - chi.dchi(r / eps) / eps;
  const double as = arctan_sigma(x);
  const double rho2 = x.rho2();
  return {2.0 * (x.phi / r3) * dpsi * as + 2.0 * psi * rho2 / r4,
          (rho2 / (2.0 * r3)) * dpsi * as - 2.0 * psi * x.phi / r4};
}

double monotonicity_identity_residual(const LegendrianPlane& plane, double a, double eps,
                               const CutoffProfile& chi, const HPoint& q) {
  check_scales(a, eps);
  const LegendrianPlane pl = left_translate(group_inv(q), plane);
  const HPoint& x = pl.base;
  if (x.rho2() == 0.0) throw DomainError("monotonicity identity: base lies on the phi-axis");

  const RadialJet rj = radial_jet(monotonicity_radial(a, eps, chi), pl);
  const Vec2 gr = grad_rho2(pl), gp = grad_phi(pl);
  const double gz2 = grad_z_norm2(pl);
  const double lhs = 0.5 * gr.dot(rj.grad_g_phi) + gz2 * rj.g_phi - 2.0 * gp.dot(rj.grad_g_r);

  const double r = gauge(x);
  const double r3 = r * r * r, r4 = r3 * r;
  const double psi = chi.chi(r / a) - chi.chi(r / eps);
  const double dpsi = chi.dchi(r / a) / a - chi.dchi(r / eps) / eps;
  const double d2psi = chi.d2chi(r / a) / (a * a) - chi.d2chi(r / eps) / (eps * eps);
  const double as = arctan_sigma(x);
  const Vec2 g_r = plane_gradient_of(gauge_gradient(x), pl);
  const Vec2 g_as = plane_gradient_of(arctan_sigma_gradient(x), pl);
  // grad^P [r^-3 psi' arctan sigma]
  const double h = dpsi / r3;
  const double dh = -3.0 * dpsi / r4 + d2psi / r3;
  const Vec2 g_h_as = dh * as * g_r + h * g_as;
  const double rhs = 2.0 * g_r.squaredNorm() * dpsi / r + gz2 * (2.0 * x.phi / r3) * dpsi * as -
                     0.5 * r4 * g_as.dot(g_h_as) + 2.0 * g_as.squaredNorm() * psi;
  return std::abs(lhs - rhs);
}

double monotonicity_divergence_residual(const LegendrianPlane& plane, double a, double eps,
                                 const CutoffProfile& chi, const HPoint& q) {
  check_scales(a, eps);
  const LegendrianPlane pl = left_translate(group_inv(q), plane);
  const RadialJet rj = radial_jet(monotonicity_radial(a, eps, chi), pl);
  const double lhs = 0.5 * grad_rho2(pl).dot(rj.grad_g_phi) + grad_z_norm2(pl) * rj.g_phi -
                     2.0 * grad_phi(pl).dot(rj.grad_g_r);
  const double div = plane_divergence(monotonicity_hamiltonian(q, a, eps, chi), plane);
  return std::abs(lhs + 2.0 * div);
}

double plane_gradient_balance_residual(const LegendrianPlane& pl) {
  const HPoint& x = pl.base;
  const double rho = x.rho();
  const Vec2 g_rho = rho > 0.0 ? tangential(x.z / rho, pl) : Vec2::Zero();
  const Vec2 gp = grad_phi(pl);
  return std::abs(0.5 * x.rho2() * grad_z_norm2(pl) - x.rho2() * g_rho.squaredNorm() -
                  gp.squaredNorm());
}

double gauge_ratio_gradient_residual(const LegendrianPlane& pl) {
  auto grad_of = [&pl](const std::function<Jet5(const HCoords<Jet5>&)>& f) {
    return plane_gradient_of(f(seed_coords(pl.base)).g, pl);
  };
  const Vec2 g_rho2 = grad_of([](const HCoords<Jet5>& x) { return rho2_of(x); });
  const Vec2 g_a = grad_of([](const HCoords<Jet5>& x) {
    const Jet5 r2 = rho2_of(x);
    return r2 * reciprocal(r2 * r2 + 4.0 * x[4] * x[4]);
  });
  const Vec2 g_phi = grad_of([](const HCoords<Jet5>& x) { return x[4]; });
  const Vec2 g_b = grad_of([](const HCoords<Jet5>& x) {
    const Jet5 r2 = rho2_of(x);
    return x[4] * reciprocal(r2 * r2 + 4.0 * x[4] * x[4]);
  });
  const Vec2 g_as = grad_of([](const HCoords<Jet5>& x) { return arctan_sigma_of(x); });
  const HPoint& x = pl.base;
  const double r4 = x.rho2() * x.rho2() + 4.0 * x.phi * x.phi;
  const double lhs = g_rho2.dot(g_a) + 2.0 * grad_z_norm2(pl) * x.rho2() / r4 + 4.0 * g_phi.dot(g_b);
  return std::abs(lhs - 2.0 * g_as.squaredNorm());
}

}  // namespace legvar
