#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "legvar/convergence.hpp"
#include "legvar/surfaces.hpp"

using namespace legvar;

namespace {

constexpr double kPi = std::numbers::pi;

const CutoffProfile kPoly(CutoffKind::poly);
const CutoffProfile kBump(CutoffKind::bump);

// Two Lagrangian planes through q meeting only at q.
DiscreteVarifold two_planes(const HPoint& q, int n) {
  DiscreteVarifold v = flat_plane_varifold(q, Eigen::Matrix2cd::Identity(), 4.0, n);
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity() * std::complex<double>(0, 1);
  v.append(flat_plane_varifold(q, u, 4.0, n));
  return v;
}

}  // namespace

TEST_CASE("cutoff profiles") {
  for (const CutoffProfile& chi : {kPoly, kBump}) {
    CAPTURE(chi.name());
    CHECK(chi.chi(0.0) == 1.0);
    CHECK(chi.chi(0.5) == 1.0);
    CHECK(chi.chi(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(chi.chi(2.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(chi.chi(3.0) == 0.0);
    CHECK(chi.dchi(0.5) == 0.0);
    CHECK(chi.dchi(2.5) == 0.0);
    // Composite Simpson of -chi' over [1, 2].
    const int m = 4000;
    double s = 0;
    for (int k = 0; k <= m; ++k) {
      const double w = (k == 0 || k == m) ? 1 : (k % 2 ? 4 : 2);
      s -= w * chi.dchi(1.0 + double(k) / m);
    }
    CHECK(s / (3.0 * m) == doctest::Approx(1.0).epsilon(1e-10));
    for (double t = 1.05; t < 2.0; t += 0.1) {
      CHECK(chi.dchi(t) <= 0.0);
      const double h = 1e-5;
      CHECK((chi.chi(t + h) - chi.chi(t - h)) / (2 * h) == doctest::Approx(chi.dchi(t)).epsilon(1e-6));
      CHECK((chi.dchi(t + h) - chi.dchi(t - h)) / (2 * h) == doctest::Approx(chi.d2chi(t)).epsilon(1e-5));
    }
  }
  CHECK(parse_cutoff_kind("bump") == CutoffKind::bump);
  CHECK_THROWS(parse_cutoff_kind("box"));
}

TEST_CASE("Theta of planes") {
  const HPoint q(0.3, -1.0, 0.2, 0.5, 1.5);
  const DiscreteVarifold flat = flat_plane_varifold(q, haar_unitary(4), 4.0, 401);
  for (const CutoffProfile& chi : {kPoly, kBump})
    for (double a : {0.5, 1.0, 1.5}) {
      const ThetaTerms t = capital_theta_terms(flat, q, a, chi);
      CHECK(t.total() == doctest::Approx(2 * kPi).epsilon(1e-6));
      // The plane passes through q horizontally: no vertical part.
      CHECK(std::abs(t.vertical) + std::abs(t.mixed) <= 1e-12);
    }
  const DiscreteVarifold doubled = flat_plane_varifold(q, haar_unitary(4), 4.0, 401, 2.0);
  CHECK(capital_theta(doubled, q, 1.0, kPoly) == doctest::Approx(4 * kPi).epsilon(1e-6));
  CHECK(capital_theta(two_planes(q, 401), q, 1.0, kPoly) == doctest::Approx(4 * kPi).epsilon(1e-6));
  // Far from the support nothing is seen.
  CHECK(capital_theta(flat, HPoint(0, 0, 0, 0, 50), 1.0, kPoly) == 0.0);
  CHECK_THROWS_AS(capital_theta(flat, q, 0.0, kPoly), DomainError);
}

TEST_CASE("Theta of the Clifford blow-down") {
  const DiscreteVarifold v = clifford_blowdown_varifold(20.0, 4001, 8);
  for (const CutoffProfile& chi : {kPoly, kBump})
    for (double a : {0.5, 1.0, 2.0, 3.0}) CHECK(capital_theta(v, HPoint(), a, chi) == doctest::Approx(2 * kPi * kPi).epsilon(1e-6));
}

TEST_CASE("Theta symmetries") {
  const DiscreteVarifold v = two_planes(HPoint(0.2, 0.1, -0.3, 0.4, 0.7), 201);
  const HPoint q(0.5, 0.0, -0.2, 0.1, 0.9);
  const double base = capital_theta(v, q, 0.8, kBump);
  CHECK(base > 0);
  const HPoint g(1.0, -2.0, 0.5, 3.0, -4.0);
  CHECK(capital_theta(v.translated(g), group_mul(g, q), 0.8, kBump) == doctest::Approx(base).epsilon(1e-10));
  for (double t : {0.5, 3.0})
    CHECK(capital_theta(v.dilated(t), dilate(t, q), 0.8 * t, kBump) == doctest::Approx(base).epsilon(1e-10));
}

TEST_CASE("limit integrand is non-negative") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n01;
  DiscreteVarifold v;
  for (unsigned s = 0; s < 3000; ++s) {
    const HPoint p(Vec4(n01(rng), n01(rng), n01(rng), n01(rng)), n01(rng));
    v.samples.push_back({random_legendrian_plane(p, s), 1.0});
  }
  for (double a : {0.3, 0.7, 1.2})
    for (unsigned k = 0; k < 20; ++k) {
      DiscreteVarifold one;
      one.samples.push_back(v.samples[k * 100]);
      CHECK(capital_theta_terms(one, HPoint(), a, kPoly).limit() >= 0.0);
      CHECK(capital_theta_terms(v, HPoint(0.1 * k, 0, 0, 0, 0), a, kBump).limit() >= 0.0);
    }
}

TEST_CASE("mass ratios") {
  const HPoint q(0, 0, 0, 0, 0);
  const DiscreteVarifold flat = flat_plane_varifold(q, haar_unitary(2), 2.5, 501);
  const MassRatio m = mass_ratio_check(flat, q, 0.5, 1.0);
  CHECK(m.ratio == doctest::Approx(1.0 / 3.0).epsilon(2e-2));
  const DiscreteVarifold down = clifford_blowdown_varifold(10.0, 20001, 1);
  CHECK(mass_ratio_check(down, q, 1.0, 2.0).ratio == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
  const MassRatio empty = mass_ratio_check(flat, HPoint(0, 0, 0, 0, 100), 0.5, 1.0);
  CHECK(empty.ratio == 0.0);
  CHECK(empty.degenerate);
  CHECK_THROWS_AS(mass_ratio_check(flat, q, 0.6, 1.0), DomainError);
}

TEST_CASE("Dirichlet energy of arctan sigma") {
  const double b = 1.0;
  for (double c : {0.05, 0.2, -0.3}) {
    const DiscreteVarifold v = flat_plane_varifold(HPoint(0, 0, 0, 0, c), haar_unitary(6), 1.2, 1601);
    CHECK(arctan_sigma_dirichlet(v, HPoint(), b) == doctest::Approx(2 * kPi * (1 - 4 * c * c / std::pow(b, 4))).epsilon(2e-3));
  }
  // On a plane through the center arctan sigma is constant.
  CHECK(arctan_sigma_dirichlet(flat_plane_varifold(HPoint(), haar_unitary(6), 1.2, 101), HPoint(), b) <= 1e-20);
  CHECK(arctan_sigma_dirichlet(clifford_blowdown_varifold(5.0, 101, 4), HPoint(), 2.0) <= 1e-20);
  const LegendrianPlane pl = random_legendrian_plane(HPoint(0.3, 0.1, -0.2, 0.4, 0.05), 3);
  DiscreteVarifold one;
  one.samples.push_back({pl, 0.7});
  CHECK(arctan_sigma_dirichlet(one, HPoint(), 1.0) ==
        doctest::Approx(0.7 * plane_gradient(translated_field(BasicField::arctan_sigma, HPoint()), pl).norm2()).epsilon(1e-9));
  CHECK(arctan_sigma_dirichlet(one, HPoint(), 0.1) == 0.0);
}

TEST_CASE("stationarity pairing") {
  const HPoint q(0.2, 0.1, 0.0, -0.3, 0.4);
  for (unsigned s = 1; s <= 5; ++s) {
    Ladder flat;
    for (int n : {101, 201, 401}) {
      flat.n.push_back(n);
      flat.err.push_back(
          std::abs(stationarity_pairing(flat_plane_varifold(q, haar_unitary(8), 2.5, n), random_bump_hamiltonian(q, 1.0, s))));
    }
    CHECK(flat.slope() >= 1.8);
    CHECK(flat.err.back() <= 1e-5);
  }

  // Induced varifold of the Clifford torus: O(h^2).
  Ladder clif;
  const HPoint c(-1, 0, -1, 0, 2 * kPi);
  for (int n : {32, 64, 128}) {
    clif.n.push_back(n);
    clif.err.push_back(std::abs(stationarity_pairing(induced_varifold(clifford_torus_lift(clifford_domain(1, n, n))).varifold,
                                                     random_bump_hamiltonian(c, 2.0, 1))));
  }
  CHECK(clif.slope() >= 1.8);

  // A kinked pair of half-planes has first variation along the kink.
  std::vector<double> kinked, straight;
  for (int n : {20, 40, 80}) {
    double k = 0, s = 0;
    for (unsigned seed = 1; seed <= 4; ++seed) {
      const ScalarField f = random_bump_hamiltonian(HPoint(), 1.0, seed);
      k = std::max(k, std::abs(stationarity_pairing(tilted_strip_varifold(0.8, 2.0, n), f)));
      s = std::max(s, std::abs(stationarity_pairing(tilted_strip_varifold(0.0, 2.0, n), f)));
    }
    kinked.push_back(k);
    straight.push_back(s);
  }
  CHECK(kinked.back() >= 1.0);
  CHECK(std::abs(kinked[2] - kinked[1]) <= 0.01 * kinked[2]);
  CHECK(straight.back() <= 1e-3);
  CHECK(straight[2] < straight[1]);
}

TEST_CASE("density estimates") {
  const HPoint q;
  const DiscreteVarifold flat = flat_plane_varifold(q, haar_unitary(1), 6.0, 601);
  const DensityReport rep = density(flat, q, kPoly, {0.01, 0.5, 1.0, 1.5, 2.0, 2.5});
  CHECK(rep.skipped_radii.size() == 1);
  CHECK(rep.radii.size() == 5);
  CHECK(rep.smallest_radius_value == doctest::Approx(2 * kPi).epsilon(1e-5));
  CHECK(rep.extrapolated_density == doctest::Approx(2 * kPi).epsilon(1e-5));
  CHECK(rep.spread <= 1e-4);
  CHECK_THROWS_AS(density(flat, q, kPoly, {0.01, 0.5, 1.0}), DiagnosticError);

  const PowerFit fit = fit_power_law({0.1, 0.2, 0.4, 0.8}, {1 + 0.5 * std::pow(0.1, 1.3), 1 + 0.5 * std::pow(0.2, 1.3),
                                                           1 + 0.5 * std::pow(0.4, 1.3), 1 + 0.5 * std::pow(0.8, 1.3)});
  CHECK(fit.theta == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fit.alpha == doctest::Approx(1.3).epsilon(1e-10));
}

TEST_CASE("SW cone tip density") {
  for (auto [p, q] : {std::pair{1, 1}, {2, 1}, {3, 2}}) {
    const GridSurface s = sw_cone(p, q, GridDomain::cylinder(-2.5, 0.5, 2 * kPi, 256, 256));
    const DiscreteVarifold v = induced_varifold(s).varifold;
    for (double a : {0.2, 0.3, 0.4})
      CHECK(capital_theta(v, HPoint(), a, kPoly) == doctest::Approx(2 * kPi * std::sqrt(p * q)).epsilon(1e-3));
  }
}

TEST_CASE("Clifford monotonicity at an image point") {
  const GridSurface s = clifford_torus_lift(clifford_domain(3, 300, 900));
  const DiscreteVarifold v = induced_varifold(s).varifold;
  // x1 = x2 = 3 pi sits mid-range in phi.
  const HPoint c(-1, 0, -1, 0, 6 * kPi);
  std::vector<double> radii;
  for (double a = 0.2; a <= 2.2; a *= 1.4) radii.push_back(a);
  const DensityReport rep = monotonicity_scan(v, c, radii, kPoly);
  CHECK(rep.radii.size() >= 6);
  CHECK(rep.radii.front() >= 5 * rep.spacing);
  CHECK(rep.relative_violation <= 0.01);
  CHECK(rep.smallest_radius_value == doctest::Approx(2 * kPi).epsilon(2e-2));
}

TEST_CASE("varifold bookkeeping") {
  DiscreteVarifold v = flat_plane_varifold(HPoint(), haar_unitary(1), 1.0, 11);
  CHECK(v.mass() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(v.dilated(2.0).mass() == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(v.median_spacing() == doctest::Approx(0.2).epsilon(1e-12));
  CHECK_NOTHROW(v.validate());
  v.samples[3].weight = -1;
  CHECK_THROWS_AS(v.validate(), DomainError);
}
