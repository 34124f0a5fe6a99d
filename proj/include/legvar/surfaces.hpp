#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "legvar/grid.hpp"
#include "legvar/varifold.hpp"

namespace legvar {

/// Raised when a plaquette loop integral of the Liouville form is too large
/// for the map to admit a Legendrian lift.
class NonExactLagrangianError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Sampled map u on a grid with integer multiplicity N. Across periodic
/// seams, u(x + edge_k) = u(x) + phi_jump[k] d/dphi.
struct GridSurface {
  GridDomain domain;
  std::vector<HPoint> u;
  std::vector<int> N;
  std::array<double, 2> phi_jump{0.0, 0.0};

  void validate() const;
  const HPoint& at(int i, int j) const { return u[domain.index(i, j)]; }
  /// Coordinates at possibly out-of-range indices along periodic directions.
  Vec5 coords(int i, int j) const;
};

GridSurface surface_from_function(const GridDomain& grid,
                                  const std::function<HPoint(const Vec2&)>& fn,
                                  std::array<double, 2> phi_jump = {0.0, 0.0}, int mult = 1);

/// Cone scale e^{sqrt(pq) s} / sqrt(p+q) (sqrt(q) e^{i p theta}, i sqrt(p) e^{-i q theta})
/// in the conformal chart (s, theta), r = e^s, with phi = 0.
GridSurface sw_cone(int p, int q, const GridDomain& grid, double scale = 1.0);
Vec4 sw_cone_point(int p, int q, double s, double theta, double scale = 1.0);

/// u(x) = (cos x1, sin x1, cos x2, sin x2, x1 + x2) on the torus with lattice
/// 2 pi (1,-1) and 2 pi (n, n); phi jumps by 4 pi n along the second vector.
GridSurface clifford_torus_lift(const GridDomain& grid);
GridDomain clifford_domain(int cover, int n1, int n2, const Vec2& origin = Vec2::Zero());

/// Isometric linear Legendrian plane q * (x1 Z1 + x2 Z2) with Z = columns of u.
GridSurface flat_plane_surface(const GridDomain& grid, const Eigen::Matrix2cd& u,
                               const HPoint& q = HPoint(), int mult = 1);

/// Ambient x-derivatives of u at every node.
struct SurfaceTangents {
  std::vector<Vec5> d1, d2;
};
SurfaceTangents surface_tangents(const GridSurface& s);

double legendrian_residual(const GridSurface& s);
double conformality_residual(const GridSurface& s);
/// max over nodes of |g_ij - delta_ij| for the horizontal frame metric.
double isometry_defect(const GridSurface& s);
double dirichlet_energy(const GridSurface& s, const NodeMask& mask = all_nodes);

/// Integrals of |grad u|^2 measured horizontally, in R^5, and the bound
/// (1 + max |v|^2) times the horizontal one.
struct EnergySandwich {
  double horizontal = 0.0;
  double euclidean = 0.0;
  double bound = 0.0;
  bool holds(double rel_tol = 1e-12) const;
};
EnergySandwich energy_sandwich(const GridSurface& s);

struct SurfaceReport {
  double legendrian_residual = 0.0;
  double conformality_residual = 0.0;
  double dirichlet_energy = 0.0;
  std::vector<std::string> notes;
};
SurfaceReport surface_report(const GridSurface& s);

struct LiftResult {
  GridSurface surface;
  double closure_defect = 0.0;  // max |plaquette loop integral| / image cell area
};
/// Integrates d phi = sum (v_{2j-1} dv_{2j} - v_{2j} dv_{2j-1}) along a
/// spanning tree (first column, then rows) on a rectangle grid.
LiftResult legendrian_lift(const GridDomain& grid, const std::vector<Vec4>& v, double base_value,
                           double max_defect = 0.05);

struct InducedVarifold {
  DiscreteVarifold varifold;
  std::vector<std::size_t> node_of_sample;
  std::size_t skipped = 0;
};
/// One sample per masked non-degenerate node: the Lagrangian plane closest to
/// the span of the tangents, weight N |grad u|^2 / 2 times the node weight.
InducedVarifold induced_varifold(const GridSurface& s, const NodeMask& mask = all_nodes);

/// |sum over masked nodes of N * grad(W_F o u) . grad u| in the expanded form
/// with exact derivatives of F. F must vanish on a two-cell collar of the mask
/// boundary, open ends and phi-jump seams.
double stationarity_residual(const GridSurface& s, const ScalarField& f,
                             const NodeMask& mask = all_nodes);

/// Max over nodes with both neighbours of |lap v + i grad beta . grad v| + |lap beta|;
/// beta differences are wrapped to (-pi, pi]. Requires orthogonal grid steps.
double flat_pde_residual(const GridDomain& grid, const std::vector<Vec4>& v,
                         const std::vector<double>& beta);

struct AngleField {
  std::vector<std::complex<double>> g;
  std::vector<char> valid;
  std::size_t skipped = 0;
  double max_modulus_defect = 0.0;  // max ||g| - 1| over valid nodes
};
/// g with v^*(dw1 ^ dw2) = g dvol.
AngleField lagrangian_angle(const GridSurface& s);
/// beta = -arg g (invalid nodes get 0).
std::vector<double> angle_beta(const AngleField& a);
/// Degree of g along the periodic second direction at row i.
double winding_number(const GridSurface& s, const AngleField& a, int row);

std::vector<Vec4> projection(const GridSurface& s);

}  // namespace legvar
