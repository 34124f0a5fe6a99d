#pragma once

// Forward-mode second-order jets: value, gradient and Hessian carried
// through arithmetic so that closed-form fields get exact derivatives.

#include <Eigen/Core>
#include <cmath>

namespace legvar {

template <int N>
struct Jet {
  using Vector = Eigen::Matrix<double, N, 1>;
  using Matrix = Eigen::Matrix<double, N, N>;

  double v = 0.0;
  Vector g = Vector::Zero();
  Matrix h = Matrix::Zero();

  Jet() = default;
  Jet(double value) : v(value) {}  // NOLINT: constants promote implicitly

  static Jet variable(double value, int index) {
    Jet j(value);
    j.g[index] = 1.0;
    return j;
  }

  Jet& operator+=(const Jet& o) {
    v += o.v;
    g += o.g;
    h += o.h;
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    v -= o.v;
    g -= o.g;
    h -= o.h;
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    h = h * o.v + o.h * v + g * o.g.transpose() + o.g * g.transpose();
    g = g * o.v + o.g * v;
    v *= o.v;
    return *this;
  }
  Jet& operator*=(double s) {
    v *= s;
    g *= s;
    h *= s;
    return *this;
  }
};

/// Applies a univariate function given its value and first two derivatives
/// at x.v (the chain rule for second-order jets).
template <int N>
Jet<N> chain(const Jet<N>& x, double f, double df, double d2f) {
  Jet<N> r;
  r.v = f;
  r.g = df * x.g;
  r.h = df * x.h + d2f * (x.g * x.g.transpose());
  return r;
}

template <int N>
Jet<N> operator-(const Jet<N>& a) {
  Jet<N> r = a;
  r *= -1.0;
  return r;
}
template <int N>
Jet<N> operator+(Jet<N> a, const Jet<N>& b) {
  return a += b;
}
template <int N>
Jet<N> operator-(Jet<N> a, const Jet<N>& b) {
  return a -= b;
}
template <int N>
Jet<N> operator*(Jet<N> a, const Jet<N>& b) {
  return a *= b;
}
template <int N>
Jet<N> operator+(Jet<N> a, double b) {
  a.v += b;
  return a;
}
template <int N>
Jet<N> operator+(double b, Jet<N> a) {
  a.v += b;
  return a;
}
template <int N>
Jet<N> operator-(Jet<N> a, double b) {
  a.v -= b;
  return a;
}
template <int N>
Jet<N> operator-(double b, const Jet<N>& a) {
  return -a + b;
}
template <int N>
Jet<N> operator*(Jet<N> a, double s) {
  return a *= s;
}
template <int N>
Jet<N> operator*(double s, Jet<N> a) {
  return a *= s;
}

template <int N>
Jet<N> reciprocal(const Jet<N>& a) {
  const double inv = 1.0 / a.v;
  return chain(a, inv, -inv * inv, 2.0 * inv * inv * inv);
}
template <int N>
Jet<N> operator/(const Jet<N>& a, const Jet<N>& b) {
  return a * reciprocal(b);
}
template <int N>
Jet<N> operator/(Jet<N> a, double s) {
  return a *= (1.0 / s);
}
template <int N>
Jet<N> operator/(double s, const Jet<N>& a) {
  return s * reciprocal(a);
}

template <int N>
Jet<N> sqrt(const Jet<N>& a) {
  const double s = std::sqrt(a.v);
  return chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}
template <int N>
Jet<N> pow(const Jet<N>& a, double e) {
  const double p = std::pow(a.v, e);
  return chain(a, p, e * p / a.v, e * (e - 1.0) * p / (a.v * a.v));
}
template <int N>
Jet<N> exp(const Jet<N>& a) {
  const double e = std::exp(a.v);
  return chain(a, e, e, e);
}
template <int N>
Jet<N> sin(const Jet<N>& a) {
  return chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v));
}
template <int N>
Jet<N> cos(const Jet<N>& a) {
  return chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v));
}
template <int N>
Jet<N> atan(const Jet<N>& a) {
  const double d = 1.0 / (1.0 + a.v * a.v);
  return chain(a, std::atan(a.v), d, -2.0 * a.v * d * d);
}

/// atan2(y, x) with derivatives (x dy - y dx)/(x^2 + y^2); requires (x,y) != 0.
template <int N>
Jet<N> atan2(const Jet<N>& y, const Jet<N>& x) {
  const double r2 = x.v * x.v + y.v * y.v;
  Jet<N> out;
  out.v = std::atan2(y.v, x.v);
  const double dy = x.v / r2;
  const double dx = -y.v / r2;
  out.g = dy * y.g + dx * x.g;
  // Second partials of atan2 in (y, x).
  const double r4 = r2 * r2;
  const double d_yy = -2.0 * x.v * y.v / r4;
  const double d_xx = 2.0 * x.v * y.v / r4;
  const double d_xy = (y.v * y.v - x.v * x.v) / r4;
  out.h = dy * y.h + dx * x.h + d_yy * (y.g * y.g.transpose()) +
          d_xx * (x.g * x.g.transpose()) +
          d_xy * (x.g * y.g.transpose() + y.g * x.g.transpose());
  return out;
}

inline double value_of(double x) { return x; }
template <int N>
double value_of(const Jet<N>& x) {
  return x.v;
}

}  // namespace legvar
