#pragma once

#include <functional>

#include "legvar/cutoff.hpp"
#include "legvar/scalar_field.hpp"

namespace legvar {

/// Legendrian 2-plane at `base`, spanned by orthonormal horizontal Z1, Z2
/// given in frame coefficients.
struct LegendrianPlane {
  HPoint base;
  HTangent z1;
  HTangent z2;

  LegendrianPlane() = default;
  LegendrianPlane(const HPoint& p, const Vec4& h1, const Vec4& h2);

  Vec4 h1() const { return z1.horizontal(); }
  Vec4 h2() const { return z2.horizontal(); }

  struct Residuals {
    double horizontal;  // max |alpha(Z_i)|
    double orthonormal;
    double lagrangian;  // |<J_H Z1, Z2>|
    double grad_z;      // ||grad^P z|^2 - 2|
    double max() const;
  };
  Residuals residuals() const;
  /// Throws DomainError if any invariant exceeds tol.
  void validate(double tol = 1e-10) const;

  /// Same plane rebased by the rotation of (Z1, Z2) through angle t.
  LegendrianPlane rebased(double t) const;
  /// Orthogonal projector onto the plane in frame coordinates (5x5).
  Mat5 projector() const;
};

/// Unitary image of the real plane span{e1, e3} placed at p.
LegendrianPlane plane_from_unitary(const HPoint& p, const Eigen::Matrix2cd& u);
/// span{cos a X1 + sin a Y1, cos b X2 + sin b Y2} at p.
LegendrianPlane plane_ab(const HPoint& p, double a, double b);
/// Approximately Haar-distributed U(2) image of span{e1, e3}; deterministic in seed.
LegendrianPlane random_legendrian_plane(const HPoint& p, unsigned long long seed);
Eigen::Matrix2cd haar_unitary(unsigned long long seed);

/// Plane transported by left multiplication with q (frame coefficients unchanged).
LegendrianPlane left_translate(const HPoint& q, const LegendrianPlane& pl);

struct PlaneGradient {
  LegendrianPlane plane;
  Vec2 coeffs = Vec2::Zero();
  double norm2() const { return coeffs.squaredNorm(); }
};

HTangent horizontal_gradient(const ScalarField& f, const HPoint& p);
PlaneGradient plane_gradient(const ScalarField& f, const LegendrianPlane& pl);
/// Tangential gradient of a function with the given ambient coordinate gradient.
Vec2 plane_gradient_of(const Vec5& ambient_grad, const LegendrianPlane& pl);

/// W_F in frame coefficients: 2 W_F = J_H grad^H F - 2 F d/dphi.
HTangent hamiltonian_vector(const ScalarField& f, const HPoint& p);
/// Ambient components of W_F from the coordinate expansion
/// 2W = sum (F_{z_{2j-1}} d_{z_{2j}} - F_{z_{2j}} d_{z_{2j-1}}) - F_phi sum z_k d_{z_k}
///      + (sum z_k F_{z_k} - 2F) d_phi.
Vec5 hamiltonian_vector_expansion(const ScalarField& f, const HPoint& p);

/// div_P W_F from tangential derivatives of the frame components of W_F.
double plane_divergence(const ScalarField& f, const LegendrianPlane& pl);

/// G(R, phi) with R = rho^2 around the origin, as a two-variable jet.
using RadialFn = std::function<Jet<2>(const Jet<2>& r2, const Jet<2>& phi)>;
/// Radial formula for F = G(rho^2, phi):
/// 2 div = 2 grad^P G_R . grad^P phi - |grad^P z|^2 G_phi - (1/2) grad^P G_phi . grad^P rho^2.
double plane_divergence_radial(const RadialFn& g, const LegendrianPlane& pl);
/// The same radial G as a ScalarField on H^2.
ScalarField radial_field(const RadialFn& g);

/// F = (chi(r_q/a) - chi(r_q/eps)) arctan sigma_q.
ScalarField monotonicity_hamiltonian(const HPoint& q, double a, double eps,
                                     const CutoffProfile& chi);
/// dF/dphi and dF/d(rho^2) of the centered monotonicity Hamiltonian from
/// the closed forms in psi, psi' and the gauge.
Vec2 monotonicity_partials(const HPoint& x, double a, double eps, const CutoffProfile& chi);

/// |LHS - RHS| of the pointwise monotonicity identity at the plane (centered
/// at q); the base must be off the phi-axis through q.
double monotonicity_identity_residual(const LegendrianPlane& pl, double a, double eps,
                               const CutoffProfile& chi, const HPoint& q = HPoint());
/// |LHS + 2 div_P W_F| for the same F; ties the identity to plane_divergence.
double monotonicity_divergence_residual(const LegendrianPlane& pl, double a, double eps,
                                 const CutoffProfile& chi, const HPoint& q = HPoint());
/// (1/2) rho^2 |grad^P z|^2 - rho^2 |grad^P rho|^2 - |grad^P phi|^2.
double plane_gradient_balance_residual(const LegendrianPlane& pl);
/// grad rho^2 . grad(rho^2/r^4) + 2|grad z|^2 rho^2/r^4 + 4 grad phi . grad(phi/r^4)
///   - 2|grad arctan sigma|^2, all tangential.
double gauge_ratio_gradient_residual(const LegendrianPlane& pl);

}  // namespace legvar
