#include <Eigen/SVD>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "legvar/convergence.hpp"
#include "legvar/surfaces.hpp"

using namespace legvar;

namespace {

constexpr double kPi = std::numbers::pi;

// Clifford bumps sit away from the phi = 0 seam of the lift.
const HPoint kCliffordBumpCenter(-1, 0, -1, 0, 2 * kPi);

double arg_winding(const std::vector<std::complex<double>>& loop) {
  double t = 0;
  for (std::size_t k = 0; k < loop.size(); ++k)
    t += std::remainder(std::arg(loop[(k + 1) % loop.size()]) - std::arg(loop[k]), 2 * kPi);
  return t / (2 * kPi);
}

GridDomain sw_chart(int n) { return GridDomain::cylinder(-1.5, 1.0, 2 * kPi, n / 2, n); }

}  // namespace

TEST_CASE("SW cone with p = q = 1 is a plane") {
  const GridSurface s = sw_cone(1, 1, sw_chart(32));
  Eigen::MatrixXd m(4, s.u.size());
  for (std::size_t k = 0; k < s.u.size(); ++k) m.col(k) = s.u[k].z;
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  CHECK(sv[2] <= 1e-12 * sv[0]);
  CHECK(sv[1] >= 0.1 * sv[0]);
}

TEST_CASE("SW cone cross-sections wind p and -q times") {
  for (auto [p, q] : {std::pair{1, 1}, {2, 1}, {3, 2}, {5, 3}}) {
    std::vector<std::complex<double>> w1, w2;
    for (int j = 0; j < 400; ++j) {
      const Vec4 z = sw_cone_point(p, q, 0.3, 2 * kPi * j / 400);
      w1.emplace_back(z[0], z[1]);
      w2.emplace_back(z[2], z[3]);
      CHECK(z.squaredNorm() == doctest::Approx(std::exp(2 * std::sqrt(p * q) * 0.3)).epsilon(1e-12));
    }
    CHECK(arg_winding(w1) == doctest::Approx(p).epsilon(1e-12));
    CHECK(arg_winding(w2) == doctest::Approx(-q).epsilon(1e-12));
  }
  CHECK_THROWS_AS(sw_cone(0, 1, sw_chart(16)), DomainError);
  CHECK_THROWS_AS(sw_cone(1, 1, clifford_domain(1, 16, 16)), DomainError);
}

TEST_CASE("residuals on hand-built maps") {
  const GridDomain sq = GridDomain::rectangle({0, 0}, {1, 1}, 9, 9);
  // Stretched but Legendrian: |d1|^2 = 4, |d2|^2 = 1.
  const GridSurface aniso = surface_from_function(sq, [](const Vec2& x) { return HPoint(2 * x[0], 0, x[1], 0, 0); });
  CHECK(conformality_residual(aniso) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(legendrian_residual(aniso) <= 1e-14);
  // phi grows along x1 with no horizontal compensation.
  const GridSurface bad = surface_from_function(sq, [](const Vec2& x) { return HPoint(x[0], 0, x[1], 0, x[0]); });
  CHECK(legendrian_residual(bad) == doctest::Approx(1.0).epsilon(1e-12));

  const GridSurface flat = flat_plane_surface(sq, Eigen::Matrix2cd::Identity());
  CHECK(dirichlet_energy(flat) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(conformality_residual(flat) <= 1e-14);
  const GridSurface twice = flat_plane_surface(sq, haar_unitary(3), HPoint(1, 2, 3, 4, 5), 2);
  CHECK(dirichlet_energy(twice) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(legendrian_residual(twice) <= 1e-12);
  CHECK(isometry_defect(twice) <= 1e-12);
}

TEST_CASE("induced varifold") {
  const GridSurface c = clifford_torus_lift(clifford_domain(1, 64, 64));
  const InducedVarifold iv = induced_varifold(c);
  CHECK(iv.skipped == 0);
  CHECK(iv.varifold.mass() == doctest::Approx(dirichlet_energy(c)).epsilon(1e-12));
  // Tangent planes span{-sin x1 X1 + cos x1 Y1, -sin x2 X2 + cos x2 Y2}.
  double worst = 0;
  for (std::size_t m = 0; m < iv.varifold.size(); ++m) {
    const auto [i, j] = c.domain.ij(iv.node_of_sample[m]);
    const Vec2 x = c.domain.node(i, j);
    const LegendrianPlane want(c.u[iv.node_of_sample[m]], Vec4(-std::sin(x[0]), std::cos(x[0]), 0, 0),
                               Vec4(0, 0, -std::sin(x[1]), std::cos(x[1])));
    worst = std::max(worst, (iv.varifold.samples[m].plane.projector() - want.projector()).norm());
  }
  CHECK(worst <= 1e-10);

  const GridDomain sq = GridDomain::rectangle({-1, -1}, {1, 1}, 11, 11);
  const GridSurface flat = flat_plane_surface(sq, haar_unitary(5), HPoint(), 3);
  const InducedVarifold fv = induced_varifold(flat, [](int i, int) { return i < 5; });
  CHECK(fv.varifold.size() == 55);
  CHECK(fv.varifold.mass() == doctest::Approx(dirichlet_energy(flat, [](int i, int) { return i < 5; })).epsilon(1e-12));
}

TEST_CASE("Clifford torus lift") {
  CHECK_THROWS_AS(clifford_torus_lift(GridDomain::torus({0, 0}, {2 * kPi, 0}, {0, 2 * kPi}, 8, 8)), DomainError);
  CHECK_THROWS_AS(clifford_torus_lift(GridDomain::torus({0, 0}, 2 * kPi * Vec2(1, -1), 2 * kPi * Vec2(1.5, 1.5), 8, 8)),
                  DomainError);
  // With exact tangents the map is an isometric Legendrian immersion.
  for (double x1 : {0.0, 0.7, 2.0})
    for (double x2 : {-1.0, 0.3}) {
      const HPoint u(std::cos(x1), std::sin(x1), std::cos(x2), std::sin(x2), x1 + x2);
      const Vec5 a = frame_coeffs(u, Vec5(-std::sin(x1), std::cos(x1), 0, 0, 1));
      const Vec5 b = frame_coeffs(u, Vec5(0, 0, -std::sin(x2), std::cos(x2), 1));
      CHECK(std::abs(a[4]) + std::abs(b[4]) <= 1e-14);
      CHECK(std::abs(a.squaredNorm() - 1) + std::abs(b.squaredNorm() - 1) + std::abs(a.dot(b)) <= 1e-14);
    }

  Ladder leg, conf, iso, stat[5];
  std::vector<double> energy;
  for (int n : {32, 64, 128}) {
    const GridSurface s = clifford_torus_lift(clifford_domain(1, n, n));
    leg.n.push_back(n);
    leg.err.push_back(legendrian_residual(s));
    conf.n.push_back(n);
    conf.err.push_back(conformality_residual(s));
    iso.n.push_back(n);
    iso.err.push_back(isometry_defect(s));
    energy.push_back(dirichlet_energy(s));
    for (int k = 0; k < 5; ++k) {
      stat[k].n.push_back(n);
      stat[k].err.push_back(stationarity_residual(s, random_bump_hamiltonian(kCliffordBumpCenter, 2.0, k + 1)));
    }
  }
  CHECK(leg.slope() >= 1.8);
  CHECK(conf.slope() >= 1.8);
  CHECK(iso.slope() >= 1.8);
  CHECK(std::abs(energy.back() / (8 * kPi * kPi) - 1) <= 2e-3);
  CHECK(energy[0] < energy[1]);
  CHECK(energy[1] < energy[2]);
  for (const Ladder& l : stat) CHECK(l.slope() >= 1.8);

  // A bump touching the phi seam is not admissible.
  const GridSurface s = clifford_torus_lift(clifford_domain(1, 32, 32));
  CHECK_THROWS_AS(stationarity_residual(s, random_bump_hamiltonian(HPoint(1, 0, 1, 0, 0), 1.0, 1)), DomainError);

  // Lagrangian angle: the tangents are i e^{i x_k}, so g = -e^{i(x1 + x2)} up to roundoff.
  const AngleField a = lagrangian_angle(s);
  CHECK(a.skipped == 0);
  CHECK(a.max_modulus_defect <= 1e-12);
  double worst = 0;
  for (std::size_t k = 0; k < s.u.size(); ++k) {
    const auto [i, j] = s.domain.ij(k);
    const Vec2 x = s.domain.node(i, j);
    worst = std::max(worst, std::abs(a.g[k] + std::polar(1.0, x[0] + x[1])));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("flat elliptic system") {
  Ladder clif;
  for (int n : {32, 64, 128}) {
    const GridSurface s = clifford_torus_lift(clifford_domain(1, n, n));
    clif.n.push_back(n);
    clif.err.push_back(flat_pde_residual(s.domain, projection(s), angle_beta(lagrangian_angle(s))));
  }
  CHECK(clif.slope() >= 1.8);
  CHECK(clif.err.back() <= 1e-3);
  // beta of the wrong sign fails.
  const GridSurface s = clifford_torus_lift(clifford_domain(1, 64, 64));
  std::vector<double> beta = angle_beta(lagrangian_angle(s));
  for (double& b : beta) b = -b;
  CHECK(flat_pde_residual(s.domain, projection(s), beta) >= 0.5);
  CHECK_THROWS_AS(flat_pde_residual(GridDomain::torus({0, 0}, {1, 0}, {1, 1}, 8, 8), std::vector<Vec4>(64),
                                    std::vector<double>(64)),
                  DomainError);
}

TEST_CASE("energy sandwich") {
  for (const GridSurface& s : {clifford_torus_lift(clifford_domain(2, 48, 96)), sw_cone(3, 2, sw_chart(64)),
                               flat_plane_surface(GridDomain::rectangle({-2, -2}, {2, 2}, 16, 16), haar_unitary(9),
                                                  HPoint(0.5, 0, 0, 1, 2))}) {
    const EnergySandwich e = energy_sandwich(s);
    CHECK(e.holds());
    CHECK(e.horizontal > 0);
  }
}

TEST_CASE("Legendrian lift") {
  const GridDomain sq = GridDomain::rectangle({-1, -1}, {1, 1}, 17, 17);
  const Eigen::Matrix2cd u = haar_unitary(11);
  std::vector<Vec4> v(sq.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const auto [i, j] = sq.ij(k);
    const Vec2 x = sq.node(i, j);
    v[k] = x[0] * to_real(u.col(0)) + x[1] * to_real(u.col(1));
  }
  const LiftResult lift = legendrian_lift(sq, v, 0.25);
  CHECK(lift.closure_defect <= 1e-12);
  for (const HPoint& p : lift.surface.u) CHECK(p.phi == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(legendrian_residual(lift.surface) <= 1e-12);

  // Complex-linear map: every plaquette encloses symplectic area.
  for (std::size_t k = 0; k < v.size(); ++k) {
    const auto [i, j] = sq.ij(k);
    const Vec2 x = sq.node(i, j);
    v[k] = Vec4(x[0], x[1], 0, 0);
  }
  CHECK_THROWS_AS(legendrian_lift(sq, v, 0.0), NonExactLagrangianError);
  CHECK_THROWS_AS(legendrian_lift(clifford_domain(1, 8, 8), std::vector<Vec4>(64), 0.0), DomainError);
}

TEST_CASE("SW cone family") {
  for (auto [p, q] : {std::pair{1, 1}, {2, 1}, {3, 2}}) {
    CAPTURE(p);
    CAPTURE(q);
    Ladder conf, leg, lift;
    for (int n : {32, 64, 128}) {
      const GridSurface s = sw_cone(p, q, sw_chart(n));
      conf.n.push_back(n);
      conf.err.push_back(conformality_residual(s));
      leg.n.push_back(n);
      leg.err.push_back(legendrian_residual(s));
      // Lift of the projection over a rectangle chart starting on the cone (phi = 0).
      const GridDomain rect = GridDomain::rectangle({-1.0, 0.0}, {0.5, 2.0}, n, n);
      std::vector<Vec4> v(rect.size());
      for (std::size_t k = 0; k < v.size(); ++k) {
        const auto [i, j] = rect.ij(k);
        const Vec2 x = rect.node(i, j);
        v[k] = sw_cone_point(p, q, x[0], x[1]);
      }
      const LiftResult lr = legendrian_lift(rect, v, 0.0);
      double worst = 0;
      for (const HPoint& pt : lr.surface.u) worst = std::max(worst, std::abs(pt.phi));
      lift.n.push_back(n);
      lift.err.push_back(worst);
      if (n == 128) {
        const AngleField a = lagrangian_angle(s);
        for (int row : {1, n / 4, n / 2 - 2}) CHECK(winding_number(s, a, row) == doctest::Approx(p - q).epsilon(1e-9));
      }
    }
    CHECK(conf.slope() >= 1.8);
    CHECK(leg.slope() >= 1.8);
    CHECK(lift.slope() >= 1.8);

    Ladder stat;
    const HPoint c(sw_cone_point(p, q, 0.0, 1.0), 0.0);
    for (int n : {128, 256, 512}) {
      stat.n.push_back(n);
      stat.err.push_back(stationarity_residual(sw_cone(p, q, sw_chart(n)), random_bump_hamiltonian(c, 0.7, 1, 1)));
    }
    CHECK(stat.slope() >= 1.8);
  }
}

TEST_CASE("flat plane stationarity") {
  // Tangents are exact, so only the quadrature of a compactly supported divergence remains.
  const HPoint q(0.1, -0.2, 0.3, 0.0, 0.5);
  for (unsigned seed = 1; seed <= 4; ++seed) {
    Ladder l;
    for (int n : {64, 128, 256}) {
      const GridSurface s = flat_plane_surface(GridDomain::rectangle({-2, -2}, {2, 2}, n, n), haar_unitary(seed), q);
      l.n.push_back(n);
      l.err.push_back(stationarity_residual(s, random_bump_hamiltonian(q, 1.0, seed)));
    }
    CHECK(l.slope() >= 1.8);
    CHECK(l.err.back() <= 1e-4);
  }
}

TEST_CASE("convergence slope helper") {
  CHECK(loglog_slope({0.1, 0.05, 0.025}, {1e-2, 2.5e-3, 6.25e-4}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::isinf(loglog_slope({0.1, 0.05}, {1e-14, 0.0})));
  CHECK_THROWS(loglog_slope({0.1}, {1.0}));
}
