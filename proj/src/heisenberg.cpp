#include "legvar/heisenberg.hpp"

#include <cmath>

namespace legvar {

Vec5 HTangent::ambient() const { return frame_matrix(base) * coeffs; }

Mat4 complex_structure() {
  Mat4 j = Mat4::Zero();
  j(1, 0) = 1.0;
  j(0, 1) = -1.0;
  j(3, 2) = 1.0;
  j(2, 3) = -1.0;
  return j;
}

UnitaryRotation::UnitaryRotation(const Mat4& a) : a_(a) {
  if (!a.allFinite()) throw std::invalid_argument("UnitaryRotation: non-finite entries");
  const double orth = (a.transpose() * a - Mat4::Identity()).cwiseAbs().maxCoeff();
  if (orth > 1e-12) throw std::invalid_argument("UnitaryRotation: matrix is not orthogonal");
  const Mat4 j = complex_structure();
  const double comm = (a * j - j * a).cwiseAbs().maxCoeff();
  if (comm > 1e-12) throw std::invalid_argument("UnitaryRotation: matrix does not commute with J");
}

UnitaryRotation UnitaryRotation::from_complex(const Eigen::Matrix2cd& u) {
  Mat4 a;
  for (int col = 0; col < 2; ++col) {
    Eigen::Vector2cd e = Eigen::Vector2cd::Zero();
    e[col] = 1.0;
    a.col(2 * col) = to_real(u * e);
    e[col] = std::complex<double>(0.0, 1.0);
    a.col(2 * col + 1) = to_real(u * e);
  }
  return UnitaryRotation(a);
}

Vec4 to_real(const Eigen::Vector2cd& w) {
  return {w[0].real(), w[0].imag(), w[1].real(), w[1].imag()};
}

Eigen::Vector2cd to_complex(const Vec4& z) {
  return Eigen::Vector2cd(std::complex<double>(z[0], z[1]), std::complex<double>(z[2], z[3]));
}

double symplectic(const Vec4& a, const Vec4& b) {
  return a[0] * b[1] - a[1] * b[0] + a[2] * b[3] - a[3] * b[2];
}

HPoint group_mul(const HPoint& p, const HPoint& q) {
  return {p.z + q.z, p.phi + q.phi + symplectic(p.z, q.z)};
}

HPoint group_inv(const HPoint& p) { return {-p.z, -p.phi}; }

double gauge(const HPoint& p) {
  const double r2 = p.rho2();
  return std::pow(r2 * r2 + 4.0 * p.phi * p.phi, 0.25);
}

double koranyi_dist(const HPoint& p, const HPoint& q) {
  return gauge(group_mul(group_inv(p), q));
}

HPoint dilate(double t, const HPoint& p) { return {t * p.z, t * t * p.phi}; }

HPoint rotate(const UnitaryRotation& a, const HPoint& p) { return {a.matrix() * p.z, p.phi}; }

double contact_alpha(const HPoint& p, const Vec5& v) {
  return -v[4] + symplectic(p.z, v.head<4>());
}

Mat5 frame_matrix(const HPoint& p) {
  Mat5 f = Mat5::Identity();
  // X_j = d/dz_{2j-1} - z_{2j} d/dphi, Y_j = d/dz_{2j} + z_{2j-1} d/dphi.
  f(4, 0) = -p.z[1];
  f(4, 1) = p.z[0];
  f(4, 2) = -p.z[3];
  f(4, 3) = p.z[2];
  return f;
}

std::array<HTangent, 5> frame_at(const HPoint& p) {
  std::array<HTangent, 5> out;
  for (int i = 0; i < 5; ++i) {
    out[i].base = p;
    out[i].coeffs = Vec5::Unit(i);
  }
  return out;
}

Vec5 frame_coeffs(const HPoint& p, const Vec5& v) {
  Vec5 c = v;
  c[4] = v[4] - symplectic(p.z, v.head<4>());
  return c;
}

Vec5 frame_derivatives(const HPoint& p, const Vec5& grad) {
  Vec5 d;
  d[0] = grad[0] - p.z[1] * grad[4];
  d[1] = grad[1] + p.z[0] * grad[4];
  d[2] = grad[2] - p.z[3] * grad[4];
  d[3] = grad[3] + p.z[2] * grad[4];
  d[4] = grad[4];
  return d;
}

Vec4 jh(const Vec4& h) { return {-h[1], h[0], -h[3], h[2]}; }

HTangent jh(const HTangent& v, double tol) {
  if (std::abs(v.vertical()) > tol) throw DomainError("jh: vector is not horizontal");
  HTangent out;
  out.base = v.base;
  out.coeffs.head<4>() = jh(v.horizontal());
  out.coeffs[4] = 0.0;
  return out;
}

double arctan_sigma(const HPoint& p) {
  const double r2 = p.rho2();
  if (r2 == 0.0 && p.phi == 0.0) throw DomainError("arctan_sigma: undefined at the origin");
  return std::atan2(2.0 * p.phi, r2);
}

Vec5 gauge_gradient(const HPoint& p) {
  const double r = gauge(p);
  const double r3 = r * r * r;
  Vec5 g;
  g.head<4>() = p.rho2() * p.z / r3;
  g[4] = 2.0 * p.phi / r3;
  return g;
}

Vec5 arctan_sigma_gradient(const HPoint& p) {
  const double r2 = p.rho2();
  const double r4 = r2 * r2 + 4.0 * p.phi * p.phi;
  Vec5 g;
  g.head<4>() = -4.0 * p.phi * p.z / r4;
  g[4] = 2.0 * r2 / r4;
  return g;
}

}  // namespace legvar
