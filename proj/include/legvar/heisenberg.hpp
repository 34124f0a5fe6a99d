#pragma once

// Closed-form primitives of the Heisenberg group H^2 = C^2 x R with
// coordinates (z1, z2, z3, z4, phi).

#include <Eigen/Core>
#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include "legvar/jet.hpp"

namespace legvar {

using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using Mat5 = Eigen::Matrix<double, 5, 5>;

/// Raised when an argument lies outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct HPoint {
  Vec4 z = Vec4::Zero();
  double phi = 0.0;

  HPoint() = default;
  HPoint(const Vec4& z_, double phi_) : z(z_), phi(phi_) {}
  HPoint(double z1, double z2, double z3, double z4, double phi_)
      : z(z1, z2, z3, z4), phi(phi_) {}

  static HPoint from_coords(const Vec5& c) { return {c.head<4>(), c[4]}; }
  Vec5 coords() const {
    Vec5 c;
    c << z, phi;
    return c;
  }
  bool finite() const { return z.allFinite() && std::isfinite(phi); }

  double rho2() const { return z.squaredNorm(); }
  double rho() const { return z.norm(); }
};

/// Tangent vector expressed in the orthonormal left-invariant frame
/// (X1, Y1, X2, Y2, d/dphi) at `base`.
struct HTangent {
  HPoint base;
  Vec5 coeffs = Vec5::Zero();

  Vec4 horizontal() const { return coeffs.head<4>(); }
  double vertical() const { return coeffs[4]; }
  double norm2() const { return coeffs.squaredNorm(); }
  Vec5 ambient() const;
};

/// Element of U(2) acting on R^4 = C^2 (z1 + i z2, z3 + i z4).
class UnitaryRotation {
 public:
  /// Validates orthogonality and commutation with J to 1e-12.
  explicit UnitaryRotation(const Mat4& a);
  static UnitaryRotation identity() { return UnitaryRotation(Mat4::Identity()); }
  static UnitaryRotation from_complex(const Eigen::Matrix2cd& u);

  const Mat4& matrix() const { return a_; }

 private:
  Mat4 a_;
};

/// Standard complex structure J z = i z on R^4.
Mat4 complex_structure();

/// Real 4-vector of a pair of complex numbers and back.
Vec4 to_real(const Eigen::Vector2cd& w);
Eigen::Vector2cd to_complex(const Vec4& z);

/// Symplectic pairing sum_j (a_{2j-1} b_{2j} - a_{2j} b_{2j-1}) = <i a, b>.
double symplectic(const Vec4& a, const Vec4& b);

HPoint group_mul(const HPoint& p, const HPoint& q);
HPoint group_inv(const HPoint& p);

/// Folland-Koranyi gauge r with r^4 = rho^4 + 4 phi^2.
double gauge(const HPoint& p);
double koranyi_dist(const HPoint& p, const HPoint& q);

HPoint dilate(double t, const HPoint& p);
HPoint rotate(const UnitaryRotation& a, const HPoint& p);

/// Contact form alpha = -dphi + sum (z_{2j-1} dz_{2j} - z_{2j} dz_{2j-1})
/// evaluated on an ambient vector at p.
double contact_alpha(const HPoint& p, const Vec5& ambient);

/// Columns are X1, Y1, X2, Y2, d/dphi in ambient R^5 coordinates.
Mat5 frame_matrix(const HPoint& p);
std::array<HTangent, 5> frame_at(const HPoint& p);

/// Frame coefficients of an ambient vector at p (inverse of frame_matrix).
Vec5 frame_coeffs(const HPoint& p, const Vec5& ambient);
/// Frame coefficients of an ambient covector gradient: (X1 f, Y1 f, X2 f, Y2 f, f_phi).
Vec5 frame_derivatives(const HPoint& p, const Vec5& ambient_gradient);

/// J_H on frame coefficients; the input must be horizontal within tol.
HTangent jh(const HTangent& v, double tol = 1e-10);
Vec4 jh(const Vec4& horizontal);

/// arctan(2 phi / rho^2) extended continuously to H^2 \ {0}; evaluated as
/// atan2(2 phi, rho^2).
double arctan_sigma(const HPoint& p);

/// Closed-form ambient gradients used by the density code.
Vec5 gauge_gradient(const HPoint& p);
Vec5 arctan_sigma_gradient(const HPoint& p);

// Jet versions of the group law and the gauge functions, used to build
// fields with exact derivatives.
template <typename T>
using HCoords = std::array<T, 5>;

template <typename T>
HCoords<T> translate_inverse(const HPoint& q, const HCoords<T>& x) {
  // q^{-1} * x with q^{-1} = (-q.z, -q.phi).
  HCoords<T> out;
  for (int k = 0; k < 4; ++k) out[k] = x[k] - q.z[k];
  out[4] = x[4] - q.phi - q.z[0] * x[1] + q.z[1] * x[0] - q.z[2] * x[3] + q.z[3] * x[2];
  return out;
}

template <typename T>
T rho2_of(const HCoords<T>& x) {
  return x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
}

template <typename T>
T gauge_of(const HCoords<T>& x) {
  using std::pow;
  const T r2 = rho2_of(x);
  return pow(r2 * r2 + 4.0 * x[4] * x[4], 0.25);
}

template <typename T>
T arctan_sigma_of(const HCoords<T>& x) {
  using std::atan2;
  return atan2(2.0 * x[4], rho2_of(x));
}

}  // namespace legvar
