#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "legvar/grid.hpp"
#include "legvar/heisenberg.hpp"

namespace legvar {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec3c = Eigen::Vector3cd;

Vec6 to_real6(const Vec3c& w);
Vec3c to_complex3(const Vec6& x);

/// Unit vector of C^3.
struct SpherePoint {
  Vec3c w;
  SpherePoint() : w(0, 0, 1) {}
  /// Throws DomainError unless ||w| - 1| <= 1e-12.
  explicit SpherePoint(const Vec3c& w);
  Vec6 real() const { return to_real6(w); }
};

/// sum x_{2l-1} dx_{2l} - x_{2l} dx_{2l-1} at p applied to v. Throws
/// DomainError when |Re <w, v>| > tol (1 + |v|).
double contact_alpha_s5(const SpherePoint& p, const Vec6& v, double tol = 1e-10);

/// Unit representative of [w1, w2, w3] whose first nonzero entry is real positive.
Vec3c hopf_map(const SpherePoint& p);

/// Distance in C^3 from p to the Hopf fiber {(0, 0, e^{i a})}.
double fiber_distance(const SpherePoint& p);

/// Horizontal, tangent and isotropic residual of span{a, b} at p (zero for
/// Legendrian planes). Vectors need not be normalized.
double s5_plane_residual(const SpherePoint& p, const Vec6& a, const Vec6& b);

/// Orthogonal projector of R^6 onto span{a, b}.
Mat6 plane_projector(const Vec6& a, const Vec6& b);

double appendix_t(int k);      // 1 / sqrt(2k - 2)
double appendix_gamma(int k);  // sqrt(k / (k - 1))

/// u_t in the conformal chart (theta, phi_t), phi_t = phi / sqrt(1 + 2t^2).
Vec3c appendix_point(double t, double theta, double phi_t);

struct SphereSurface {
  GridDomain domain;
  std::vector<Vec3c> u;
  double t = 1.0;
  int k = 0;  // 0 for a general t
  double gamma = 1.0;

  void validate() const;
};

/// u_t sampled on the (theta, phi_t) grid. Periodic directions must close up.
SphereSurface appendix_surface(double t, const GridDomain& grid);
/// u_k on the torus with periods (2 pi, 2 pi k / gamma_k).
SphereSurface appendix_torus(int k, const GridDomain& grid);
/// Torus grid for u_k with m nodes across theta and m k along phi.
GridDomain appendix_grid(int k, int m);

struct SphereTangents {
  std::vector<Vec3c> d1, d2;
};
SphereTangents sphere_tangents(const SphereSurface& s);

double sphere_legendrian_residual(const SphereSurface& s);
double sphere_conformality_residual(const SphereSurface& s);
/// Max over nodes of s5_plane_residual of the normalized tangent frame.
double sphere_frame_residual(const SphereSurface& s);
/// (1/2) sum |grad u|^2 times node weights, over masked nodes.
double sphere_area(const SphereSurface& s, const NodeMask& mask = all_nodes);
double max_fiber_distance(const SphereSurface& s);

struct MetricCheck {
  double g11 = 0, g22 = 0, g12 = 0;     // averages of the difference metric
  double e11 = 0, e22 = 0, e12 = 0;     // closed forms
  double max_error = 0;                 // worst node deviation over all entries
};
/// Metric of u_t in the original (theta, phi) coordinates from centered
/// differences with step h at `samples` random nodes.
MetricCheck appendix_metric_check(double t, double h, int samples = 64, unsigned seed = 0);

double appendix_area(int k, const GridDomain& grid, const NodeMask& mask = all_nodes);

/// Max over interior nodes of |lap u + u |grad u|^2 + i grad beta . grad u|,
/// grad beta constant in grid coordinates. Needs orthogonal steps.
double sphere_pde_residual(const SphereSurface& s, const Vec2& grad_beta);
/// The residual for u_t with grad beta_t = (0, (2t^2 - 2) / sqrt(1 + 2t^2)).
double appendix_pde_residual(double t, const GridDomain& grid);

/// Observable on (plane projector, base point).
struct TestObservable {
  std::string id;
  std::function<double(const Mat6&, const Vec3c&)> fn;
  double operator()(const Mat6& p, const Vec3c& w) const { return fn(p, w); }
};

/// Legendrian plane (e^{i a})_* P~_{tau, eta} at (0, 0, e^{i a}).
Mat6 limit_plane(double tau, double eta, double alpha);

/// unit, w3_modulus2, p11_phase, fiber_tilt, hs_gaussian.
std::vector<TestObservable> default_observable_panel();
/// Panel entries plus fiber_sin, angle_diff_sq and p15_abs. Throws
/// std::invalid_argument on unknown ids.
TestObservable observable_by_id(const std::string& id);
std::vector<std::string> observable_ids();

/// Riemann sum of phi over the induced varifold of u_k: planes from grid
/// tangents, weight |grad u|^2 / 2 times the cell area.
double counterexample_pairing(int k, const TestObservable& phi, const GridDomain& grid);
/// Pairing with the limit varifold: rectangle rule with n points per angle.
double limit_pairing(const TestObservable& phi, int n = 64);

struct CounterexampleRow {
  int k = 0;
  std::string observable;
  double pairing = 0, limit = 0, abs_err = 0;
};
struct CounterexampleStudy {
  std::vector<CounterexampleRow> rows;
  std::vector<std::string> observables;
  std::vector<double> slopes;  // fitted log |err| against log k, per observable
};
/// Pairings for every k and observable; m nodes per 2 pi in theta and phi.
CounterexampleStudy counterexample_study(const std::vector<int>& ks, const std::vector<TestObservable>& panel,
                                         int m = 128, int limit_n = 64);

}  // namespace legvar
