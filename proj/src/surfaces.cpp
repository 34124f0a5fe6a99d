#include "legvar/surfaces.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "legvar/parallel.hpp"

namespace legvar {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

std::complex<double> cplx(double re, double im) { return {re, im}; }

// Horizontal and vertical frame parts of the x-derivatives at a node.
struct NodeFrame {
  Vec5 c1, c2;  // frame coefficients
};

NodeFrame node_frame(const GridSurface& s, const SurfaceTangents& t, std::size_t k) {
  return {frame_coeffs(s.u[k], t.d1[k]), frame_coeffs(s.u[k], t.d2[k])};
}

}  // namespace

void GridSurface::validate() const {
  domain.validate();
  if (u.size() != domain.size() || N.size() != domain.size())
    throw std::invalid_argument("GridSurface: node count does not match the grid");
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (!u[k].finite()) throw std::invalid_argument("GridSurface: non-finite node");
    if (N[k] < 1) throw std::invalid_argument("GridSurface: multiplicity must be at least 1");
  }
}

Vec5 GridSurface::coords(int i, int j) const {
  int t1 = 0, t2 = 0;
  if (domain.periodic(0)) i = wrap_index(i, domain.n1, t1);
  if (domain.periodic(1)) j = wrap_index(j, domain.n2, t2);
  Vec5 c = at(i, j).coords();
  c[4] += t1 * phi_jump[0] + t2 * phi_jump[1];
  return c;
}

GridSurface surface_from_function(const GridDomain& grid, const std::function<HPoint(const Vec2&)>& fn,
                                  std::array<double, 2> phi_jump, int mult) {
  grid.validate();
  GridSurface s;
  s.domain = grid;
  s.phi_jump = phi_jump;
  s.u.resize(grid.size());
  s.N.assign(grid.size(), mult);
  for (int i = 0; i < grid.n1; ++i)
    for (int j = 0; j < grid.n2; ++j) s.u[grid.index(i, j)] = fn(grid.node(i, j));
  s.validate();
  return s;
}

Vec4 sw_cone_point(int p, int q, double s, double theta, double scale) {
  const double r = scale * std::exp(std::sqrt(double(p) * q) * s) / std::sqrt(double(p + q));
  const std::complex<double> w1 = r * std::sqrt(double(q)) * std::polar(1.0, p * theta);
  const std::complex<double> w2 = r * std::sqrt(double(p)) * cplx(0, 1) * std::polar(1.0, -q * theta);
  return {w1.real(), w1.imag(), w2.real(), w2.imag()};
}

GridSurface sw_cone(int p, int q, const GridDomain& grid, double scale) {
  if (p < 1 || q < 1) throw DomainError("sw_cone: p and q must be positive integers");
  if (grid.topology == Topology::torus) throw DomainError("sw_cone: chart must be a rectangle or cylinder");
  return surface_from_function(grid, [=](const Vec2& x) {
    return HPoint(sw_cone_point(p, q, x[0], x[1], scale), 0.0);
  });
}

GridDomain clifford_domain(int cover, int n1, int n2, const Vec2& origin) {
  if (cover < 1) throw DomainError("clifford_domain: cover must be at least 1");
  return GridDomain::torus(origin, 2.0 * kPi * Vec2(1, -1), 2.0 * kPi * cover * Vec2(1, 1), n1, n2);
}

GridSurface clifford_torus_lift(const GridDomain& grid) {
  if (grid.topology != Topology::torus) throw DomainError("clifford_torus_lift: needs a torus grid");
  const Vec2 l1 = 2.0 * kPi * Vec2(1, -1);
  const double n = grid.edge2[0] / (2.0 * kPi);
  const bool ok = (grid.edge1 - l1).norm() <= 1e-12 * l1.norm() && n >= 1.0 - 1e-12 &&
                  std::abs(n - std::round(n)) <= 1e-12 && std::abs(grid.edge2[1] - grid.edge2[0]) <= 1e-12 * n;
  if (!ok) throw DomainError("clifford_torus_lift: lattice must be 2pi(1,-1) and 2pi(n,n)");
  return surface_from_function(
      grid,
      [](const Vec2& x) {
        return HPoint(std::cos(x[0]), std::sin(x[0]), std::cos(x[1]), std::sin(x[1]), x[0] + x[1]);
      },
      {0.0, 4.0 * kPi * std::round(n)});
}

GridSurface flat_plane_surface(const GridDomain& grid, const Eigen::Matrix2cd& u, const HPoint& q, int mult) {
  const Vec4 a = to_real(u.col(0)), b = to_real(u.col(1));
  return surface_from_function(
      grid, [&](const Vec2& x) { return group_mul(q, HPoint(x[0] * a + x[1] * b, 0.0)); }, {0.0, 0.0},
      mult);
}

SurfaceTangents surface_tangents(const GridSurface& s) {
  const GridDomain& d = s.domain;
  const Eigen::Matrix2d sinv = d.step_matrix().inverse();
  SurfaceTangents t;
  t.d1.resize(d.size());
  t.d2.resize(d.size());
  auto get = [&s](int i, int j) { return s.coords(i, j); };
  parallel_for(d.size(), [&](std::size_t k) {
    const auto [i, j] = d.ij(k);
    const Vec5 di = index_derivative<Vec5>(d, 0, i, j, get);
    const Vec5 dj = index_derivative<Vec5>(d, 1, i, j, get);
    t.d1[k] = sinv(0, 0) * di + sinv(1, 0) * dj;
    t.d2[k] = sinv(0, 1) * di + sinv(1, 1) * dj;
  });
  return t;
}

double legendrian_residual(const GridSurface& s) {
  const SurfaceTangents t = surface_tangents(s);
  double worst = 0.0;
  for (std::size_t k = 0; k < s.u.size(); ++k)
    worst = std::max({worst, std::abs(contact_alpha(s.u[k], t.d1[k])),
                      std::abs(contact_alpha(s.u[k], t.d2[k]))});
  return worst;
}

double conformality_residual(const GridSurface& s) {
  const SurfaceTangents t = surface_tangents(s);
  double worst = 0.0;
  for (std::size_t k = 0; k < s.u.size(); ++k) {
    const NodeFrame f = node_frame(s, t, k);
    const double a = f.c1.squaredNorm(), b = f.c2.squaredNorm();
    if (a + b <= 0.0) continue;
    worst = std::max(worst, (std::abs(a - b) + 2.0 * std::abs(f.c1.dot(f.c2))) / (a + b));
  }
  return worst;
}

double isometry_defect(const GridSurface& s) {
  const SurfaceTangents t = surface_tangents(s);
  double worst = 0.0;
  for (std::size_t k = 0; k < s.u.size(); ++k) {
    const NodeFrame f = node_frame(s, t, k);
    const Vec4 a = f.c1.head<4>(), b = f.c2.head<4>();
    worst = std::max({worst, std::abs(a.squaredNorm() - 1.0), std::abs(b.squaredNorm() - 1.0), std::abs(a.dot(b))});
  }
  return worst;
}

double dirichlet_energy(const GridSurface& s, const NodeMask& mask) {
  const SurfaceTangents t = surface_tangents(s);
  std::vector<double> e(s.u.size(), 0.0);
  for (std::size_t k = 0; k < s.u.size(); ++k) {
    const auto [i, j] = s.domain.ij(k);
    if (!mask(i, j)) continue;
    const NodeFrame f = node_frame(s, t, k);
    e[k] = s.N[k] * 0.5 * (f.c1.squaredNorm() + f.c2.squaredNorm()) * s.domain.weight(i, j);
  }
  return deterministic_sum(e);
}

bool EnergySandwich::holds(double rel_tol) const {
  return horizontal <= euclidean * (1.0 + rel_tol) && euclidean <= bound * (1.0 + rel_tol);
}

EnergySandwich energy_sandwich(const GridSurface& s) {
  const SurfaceTangents t = surface_tangents(s);
  std::vector<double> h(s.u.size()), e(s.u.size());
  double vmax = 0.0;
  for (std::size_t k = 0; k < s.u.size(); ++k) {
    const auto [i, j] = s.domain.ij(k);
    const double w = s.N[k] * s.domain.weight(i, j);
    h[k] = w * (t.d1[k].head<4>().squaredNorm() + t.d2[k].head<4>().squaredNorm());
    e[k] = w * (t.d1[k].squaredNorm() + t.d2[k].squaredNorm());
    vmax = std::max(vmax, s.u[k].rho2());
  }
  EnergySandwich out;
  out.horizontal = deterministic_sum(h);
  out.euclidean = deterministic_sum(e);
  out.bound = (1.0 + vmax) * out.horizontal;
  return out;
}

SurfaceReport surface_report(const GridSurface& s) {
  SurfaceReport r;
  r.legendrian_residual = legendrian_residual(s);
  r.conformality_residual = conformality_residual(s);
  r.dirichlet_energy = dirichlet_energy(s);
  const InducedVarifold iv = induced_varifold(s);
  if (iv.skipped > 0) r.notes.push_back(std::to_string(iv.skipped) + " degenerate nodes skipped");
  return r;
}

LiftResult legendrian_lift(const GridDomain& grid, const std::vector<Vec4>& v, double base_value,
                           double max_defect) {
  grid.validate();
  if (grid.topology != Topology::rectangle) throw DomainError("legendrian_lift: needs a rectangle grid");
  if (v.size() != grid.size()) throw std::invalid_argument("legendrian_lift: size mismatch");
  LiftResult res;
  GridSurface& s = res.surface;
  s.domain = grid;
  s.u.resize(grid.size());
  s.N.assign(grid.size(), 1);
  std::vector<double> phi(grid.size());
  // Along a straight chord, the integral of the Liouville form is symplectic(va, vb).
  phi[grid.index(0, 0)] = base_value;
  for (int j = 1; j < grid.n2; ++j)
    phi[grid.index(0, j)] = phi[grid.index(0, j - 1)] + symplectic(v[grid.index(0, j - 1)], v[grid.index(0, j)]);
  for (int i = 1; i < grid.n1; ++i)
    for (int j = 0; j < grid.n2; ++j)
      phi[grid.index(i, j)] = phi[grid.index(i - 1, j)] + symplectic(v[grid.index(i - 1, j)], v[grid.index(i, j)]);
  double scale = 0.0;
  for (const Vec4& x : v) scale = std::max(scale, x.squaredNorm());
  for (int i = 0; i + 1 < grid.n1; ++i) {
    for (int j = 0; j + 1 < grid.n2; ++j) {
      const Vec4& a = v[grid.index(i, j)];
      const Vec4& b = v[grid.index(i + 1, j)];
      const Vec4& c = v[grid.index(i + 1, j + 1)];
      const Vec4& e = v[grid.index(i, j + 1)];
      const double loop = symplectic(a, b) + symplectic(b, c) + symplectic(c, e) + symplectic(e, a);
      const Vec4 p = c - a, q = e - b;
      const double area = 0.5 * std::sqrt(std::max(0.0, p.squaredNorm() * q.squaredNorm() - std::pow(p.dot(q), 2)));
      if (area > 1e-14 * (1.0 + scale)) {
        res.closure_defect = std::max(res.closure_defect, std::abs(loop) / area);
      } else if (std::abs(loop) > 1e-14 * (1.0 + scale)) {
        res.closure_defect = std::numeric_limits<double>::infinity();
      }
    }
  }
  if (res.closure_defect > max_defect)
    throw NonExactLagrangianError("legendrian_lift: plaquette closure defect " +
                                  std::to_string(res.closure_defect) + " exceeds " + std::to_string(max_defect));
  for (std::size_t k = 0; k < grid.size(); ++k) s.u[k] = HPoint(v[k], phi[k]);
  return res;
}

InducedVarifold induced_varifold(const GridSurface& s, const NodeMask& mask) {
  const SurfaceTangents t = surface_tangents(s);
  const std::size_t n = s.u.size();
  std::vector<double> e(n);
  double emax = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const NodeFrame f = node_frame(s, t, k);
    e[k] = f.c1.squaredNorm() + f.c2.squaredNorm();
    emax = std::max(emax, e[k]);
  }
  InducedVarifold out;
  for (std::size_t k = 0; k < n; ++k) {
    const auto [i, j] = s.domain.ij(k);
    if (!mask(i, j)) continue;
    const NodeFrame f = node_frame(s, t, k);
    Vec4 a = f.c1.head<4>(), b = f.c2.head<4>();
    const double na = a.norm();
    if (e[k] < 1e-14 * emax || na <= 0.0) {
      ++out.skipped;
      continue;
    }
    a /= na;
    b -= a.dot(b) * a;
    const double nb = b.norm();
    if (nb <= 1e-7 * std::sqrt(e[k])) {
      ++out.skipped;
      continue;
    }
    b /= nb;
    // Nearest Lagrangian frame: unitary polar factor of the complex 2x2 matrix [a b].
    Eigen::Matrix2cd m;
    m.col(0) = to_complex(a);
    m.col(1) = to_complex(b);
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Matrix2cd uu = svd.matrixU() * svd.matrixV().adjoint();
    const double w = s.N[k] * 0.5 * e[k] * s.domain.weight(i, j);
    out.varifold.samples.push_back({plane_from_unitary(s.u[k], uu), w});
    out.node_of_sample.push_back(k);
  }
  return out;
}

namespace {

// Masked nodes whose two-cell neighbourhood leaves the mask, crosses an open
// end or crosses a seam with a phi jump.
bool near_mask_boundary(const GridSurface& s, const NodeMask& mask, int i, int j) {
  const GridDomain& d = s.domain;
  for (int di = -2; di <= 2; ++di) {
    for (int dj = -2; dj <= 2; ++dj) {
      int ii = i + di, jj = j + dj, t1 = 0, t2 = 0;
      if (d.periodic(0)) ii = wrap_index(ii, d.n1, t1);
      else if (ii < 0 || ii >= d.n1) return true;
      if (d.periodic(1)) jj = wrap_index(jj, d.n2, t2);
      else if (jj < 0 || jj >= d.n2) return true;
      if ((t1 != 0 && s.phi_jump[0] != 0.0) || (t2 != 0 && s.phi_jump[1] != 0.0)) return true;
      if (!mask(ii, jj)) return true;
    }
  }
  return false;
}

}  // namespace

double stationarity_residual(const GridSurface& s, const ScalarField& f, const NodeMask& mask) {
  const SurfaceTangents t = surface_tangents(s);
  const std::size_t n = s.u.size();
  std::vector<double> terms(n, 0.0);
  std::vector<char> bad(n, 0);
  parallel_for(n, [&](std::size_t k) {
    const auto [i, j] = s.domain.ij(k);
    if (!mask(i, j)) return;
    const FieldJet fj = f.derivatives(s.u[k]);
    if (near_mask_boundary(s, mask, i, j) &&
        (std::abs(fj.value) > 1e-12 || fj.grad.norm() > 1e-12)) {
      bad[k] = 1;
      return;
    }
    const Vec4& z = s.u[k].z;
    double acc = 0.0;
    for (const Vec5* d : {&t.d1[k], &t.d2[k]}) {
      const Vec5 hd = fj.hess * (*d);  // derivative of grad F o u along this direction
      for (int jj = 0; jj < 2; ++jj)
        acc += (*d)[2 * jj + 1] * hd[2 * jj] - (*d)[2 * jj] * hd[2 * jj + 1];
      for (int kk = 0; kk < 4; ++kk)
        acc -= (*d)[kk] * ((*d)[kk] * fj.grad[4] + z[kk] * hd[4]);
    }
    terms[k] = s.N[k] * acc * s.domain.weight(i, j);
  });
  if (std::any_of(bad.begin(), bad.end(), [](char b) { return b != 0; }))
    throw DomainError("stationarity_residual: F does not vanish on the collar of the mask boundary");
  return std::abs(deterministic_sum(terms));
}

double flat_pde_residual(const GridDomain& grid, const std::vector<Vec4>& v, const std::vector<double>& beta) {
  grid.validate();
  if (!grid.orthogonal_steps()) throw DomainError("flat_pde_residual: grid steps must be orthogonal");
  if (v.size() != grid.size() || beta.size() != grid.size())
    throw std::invalid_argument("flat_pde_residual: size mismatch");
  auto wrapped = [&grid](int i, int j) {
    int t = 0;
    if (grid.periodic(0)) i = wrap_index(i, grid.n1, t);
    if (grid.periodic(1)) j = wrap_index(j, grid.n2, t);
    return grid.index(i, j);
  };
  double worst = 0.0;
  for (int i = 0; i < grid.n1; ++i) {
    for (int j = 0; j < grid.n2; ++j) {
      if (!has_both_neighbours(grid, i, j)) continue;
      const std::size_t k = grid.index(i, j);
      Eigen::Vector2cd lap = Eigen::Vector2cd::Zero(), adv = Eigen::Vector2cd::Zero();
      double lap_beta = 0.0;
      for (int dir = 0; dir < 2; ++dir) {
        const double h2 = grid.step(dir).squaredNorm();
        const std::size_t kp = dir == 0 ? wrapped(i + 1, j) : wrapped(i, j + 1);
        const std::size_t km = dir == 0 ? wrapped(i - 1, j) : wrapped(i, j - 1);
        const Eigen::Vector2cd vp = to_complex(v[kp]), v0 = to_complex(v[k]), vm = to_complex(v[km]);
        lap += (vp - 2.0 * v0 + vm) / h2;
        const double bp = wrap_angle(beta[kp] - beta[k]), bm = wrap_angle(beta[k] - beta[km]);
        lap_beta += (bp - bm) / h2;
        adv += (0.5 * (bp + bm)) * (0.5 * (vp - vm)) / h2;
      }
      const Eigen::Vector2cd res = lap + std::complex<double>(0, 1) * adv;
      worst = std::max(worst, res.norm() + std::abs(lap_beta));
    }
  }
  return worst;
}

AngleField lagrangian_angle(const GridSurface& s) {
  const SurfaceTangents t = surface_tangents(s);
  const std::size_t n = s.u.size();
  AngleField a;
  a.g.assign(n, 0.0);
  a.valid.assign(n, 0);
  double emax = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    emax = std::max(emax, t.d1[k].head<4>().squaredNorm() + t.d2[k].head<4>().squaredNorm());
  for (std::size_t k = 0; k < n; ++k) {
    const Vec4 x = t.d1[k].head<4>(), y = t.d2[k].head<4>();
    const double e = x.squaredNorm() + y.squaredNorm();
    const double dvol = std::sqrt(std::max(0.0, x.squaredNorm() * y.squaredNorm() - std::pow(x.dot(y), 2)));
    if (e < 1e-14 * emax || dvol <= 1e-12 * e) {
      ++a.skipped;
      continue;
    }
    const Eigen::Vector2cd cx = to_complex(x), cy = to_complex(y);
    a.g[k] = (cx[0] * cy[1] - cy[0] * cx[1]) / dvol;
    a.valid[k] = 1;
    a.max_modulus_defect = std::max(a.max_modulus_defect, std::abs(std::abs(a.g[k]) - 1.0));
  }
  return a;
}

std::vector<double> angle_beta(const AngleField& a) {
  std::vector<double> b(a.g.size(), 0.0);
  for (std::size_t k = 0; k < b.size(); ++k)
    if (a.valid[k]) b[k] = -std::arg(a.g[k]);
  return b;
}

double winding_number(const GridSurface& s, const AngleField& a, int row) {
  const GridDomain& d = s.domain;
  if (!d.periodic(1)) throw DomainError("winding_number: second direction must be periodic");
  double total = 0.0;
  for (int j = 0; j < d.n2; ++j) {
    const std::size_t k0 = d.index(row, j), k1 = d.index(row, (j + 1) % d.n2);
    if (!a.valid[k0] || !a.valid[k1]) throw DomainError("winding_number: degenerate node on the loop");
    total += wrap_angle(std::arg(a.g[k1]) - std::arg(a.g[k0]));
  }
  return total / (2.0 * kPi);
}

std::vector<Vec4> projection(const GridSurface& s) {
  std::vector<Vec4> v(s.u.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = s.u[k].z;
  return v;
}

}  // namespace legvar
