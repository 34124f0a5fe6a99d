#include "legvar/scalar_field.hpp"

#include <cmath>
#include <random>

namespace legvar {

ScalarField ScalarField::from_jet(JetFn f, std::string name) {
  ScalarField s;
  s.jet_ = std::move(f);
  auto jf = s.jet_;
  s.value_ = [jf](const HPoint& p) {
    HCoords<Jet5> x;
    for (int k = 0; k < 4; ++k) x[k] = Jet5(p.z[k]);
    x[4] = Jet5(p.phi);
    return jf(x).v;
  };
  s.name_ = std::move(name);
  return s;
}

ScalarField ScalarField::sampled(ValueFn f, std::string name) {
  ScalarField s;
  s.value_ = std::move(f);
  s.name_ = std::move(name);
  return s;
}

double ScalarField::operator()(const HPoint& p) const { return value_(p); }

FieldJet ScalarField::derivatives(const HPoint& p) const {
  if (!jet_) return fd_derivatives(p);
  const Jet5 j = jet_(seed_coords(p));
  return {j.v, j.g, j.h};
}

FieldJet ScalarField::fd_derivatives(const HPoint& p, double h) const {
  if (h <= 0.0) h = 1e-5 * (1.0 + gauge(p));
  const Vec5 c = p.coords();
  auto f = [&](const Vec5& x) { return value_(HPoint::from_coords(x)); };
  FieldJet out;
  out.value = f(c);
  for (int i = 0; i < 5; ++i) {
    const Vec5 e = h * Vec5::Unit(i);
    const double fp = f(c + e), fm = f(c - e);
    out.grad[i] = (fp - fm) / (2.0 * h);
    out.hess(i, i) = (fp - 2.0 * out.value + fm) / (h * h);
    for (int j = 0; j < i; ++j) {
      const Vec5 d = h * Vec5::Unit(j);
      const double v = (f(c + e + d) - f(c + e - d) - f(c - e + d) + f(c - e - d)) / (4.0 * h * h);
      out.hess(i, j) = v;
      out.hess(j, i) = v;
    }
  }
  return out;
}

ScalarField ScalarField::left_translated(const HPoint& q) const {
  if (jet_) {
    auto jf = jet_;
    return from_jet([jf, q](const HCoords<Jet5>& x) { return jf(translate_inverse(q, x)); }, name_);
  }
  auto vf = value_;
  const HPoint qi = group_inv(q);
  return sampled([vf, qi](const HPoint& p) { return vf(group_mul(qi, p)); }, name_);
}

ScalarField ScalarField::as_sampled() const { return sampled(value_, name_); }

ScalarField ScalarField::operator+(const ScalarField& o) const {
  if (jet_ && o.jet_) {
    auto a = jet_, b = o.jet_;
    return from_jet([a, b](const HCoords<Jet5>& x) { return a(x) + b(x); });
  }
  auto a = value_, b = o.value_;
  return sampled([a, b](const HPoint& p) { return a(p) + b(p); });
}

ScalarField ScalarField::operator*(double s) const {
  if (jet_) {
    auto a = jet_;
    return from_jet([a, s](const HCoords<Jet5>& x) { return a(x) * s; }, name_);
  }
  auto a = value_;
  return sampled([a, s](const HPoint& p) { return s * a(p); }, name_);
}

ScalarField translated_field(BasicField which, const HPoint& q) {
  switch (which) {
    case BasicField::gauge:
      return ScalarField::from_jet(
          [q](const HCoords<Jet5>& x) { return gauge_of(translate_inverse(q, x)); }, "gauge");
    case BasicField::arctan_sigma:
      return ScalarField::from_jet(
          [q](const HCoords<Jet5>& x) { return arctan_sigma_of(translate_inverse(q, x)); },
          "arctan_sigma");
    case BasicField::phi:
      break;
  }
  return ScalarField::from_jet([q](const HCoords<Jet5>& x) { return translate_inverse(q, x)[4]; },
                               "phi");
}

ScalarField coordinate_field(int k) {
  if (k < 0 || k > 4) throw std::invalid_argument("coordinate_field: index out of range");
  return ScalarField::from_jet([k](const HCoords<Jet5>& x) { return x[k]; },
                               "x" + std::to_string(k));
}

ScalarField random_bump_hamiltonian(const HPoint& center, double radius, unsigned seed, int terms) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  Eigen::MatrixXd lin(terms, 5);
  Eigen::VectorXd cst(terms), quad(terms);
  Eigen::MatrixXd dir(terms, 5);
  for (int t = 0; t < terms; ++t) {
    cst[t] = n01(rng);
    quad[t] = n01(rng);
    for (int k = 0; k < 5; ++k) {
      lin(t, k) = n01(rng) / radius;
      dir(t, k) = n01(rng) / radius;
    }
  }
  const double r4 = std::pow(radius, 4);
  return ScalarField::from_jet(
      [=](const HCoords<Jet5>& x) {
        const HCoords<Jet5> y = translate_inverse(center, x);
        const Jet5 r2 = rho2_of(y);
        // m = r^4 / radius^4 is a polynomial, so the bump is smooth at the center.
        const Jet5 m = (r2 * r2 + 4.0 * y[4] * y[4]) * (1.0 / r4);
        if (m.v >= 1.0) return Jet5(0.0);
        const Jet5 bump = exp(-1.0 * reciprocal(1.0 - m) + 1.0);
        Jet5 poly(0.0);
        for (int t = 0; t < terms; ++t) {
          Jet5 l(cst[t]), d(0.0);
          for (int k = 0; k < 5; ++k) {
            l += lin(t, k) * y[k];
            d += dir(t, k) * y[k];
          }
          poly += l + quad[t] * d * d;
        }
        return bump * poly;
      },
      "bump" + std::to_string(seed));
}

}  // namespace legvar
