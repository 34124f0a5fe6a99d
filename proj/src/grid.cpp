#include "legvar/grid.hpp"

#include <cmath>

namespace legvar {

std::string topology_name(Topology t) {
  switch (t) {
    case Topology::rectangle:
      return "rectangle";
    case Topology::cylinder:
      return "cylinder";
    case Topology::torus:
      return "torus";
  }
  return "?";
}

GridDomain GridDomain::rectangle(const Eigen::Vector2d& lo, const Eigen::Vector2d& hi, int n1, int n2) {
  GridDomain d;
  d.topology = Topology::rectangle;
  d.origin = lo;
  d.edge1 = {hi[0] - lo[0], 0.0};
  d.edge2 = {0.0, hi[1] - lo[1]};
  d.n1 = n1;
  d.n2 = n2;
  d.validate();
  return d;
}

GridDomain GridDomain::cylinder(double s0, double s1, double period, int n1, int n2) {
  GridDomain d;
  d.topology = Topology::cylinder;
  d.origin = {s0, 0.0};
  d.edge1 = {s1 - s0, 0.0};
  d.edge2 = {0.0, period};
  d.n1 = n1;
  d.n2 = n2;
  d.validate();
  return d;
}

GridDomain GridDomain::torus(const Eigen::Vector2d& origin, const Eigen::Vector2d& l1,
                             const Eigen::Vector2d& l2, int n1, int n2) {
  GridDomain d;
  d.topology = Topology::torus;
  d.origin = origin;
  d.edge1 = l1;
  d.edge2 = l2;
  d.n1 = n1;
  d.n2 = n2;
  d.validate();
  return d;
}

void GridDomain::validate() const {
  if (n1 < 4 || n2 < 4) throw std::invalid_argument("GridDomain: n1, n2 must be at least 4");
  if (!origin.allFinite() || !edge1.allFinite() || !edge2.allFinite())
    throw std::invalid_argument("GridDomain: non-finite geometry");
  const double det = edge1[0] * edge2[1] - edge1[1] * edge2[0];
  if (!(std::abs(det) > 1e-14 * (edge1.squaredNorm() + edge2.squaredNorm())))
    throw std::invalid_argument("GridDomain: lattice vectors are linearly dependent");
}

bool GridDomain::periodic(int dir) const {
  if (topology == Topology::torus) return true;
  if (topology == Topology::cylinder) return dir == 1;
  return false;
}

Eigen::Vector2d GridDomain::step(int dir) const {
  const Eigen::Vector2d& e = dir == 0 ? edge1 : edge2;
  const int n = dir == 0 ? n1 : n2;
  return e / (periodic(dir) ? n : n - 1);
}

Eigen::Matrix2d GridDomain::step_matrix() const {
  Eigen::Matrix2d s;
  s.col(0) = step(0);
  s.col(1) = step(1);
  return s;
}

double GridDomain::cell_area() const { return std::abs(step_matrix().determinant()); }

double GridDomain::weight(int i, int j) const {
  double w = cell_area();
  if (!periodic(0) && (i == 0 || i == n1 - 1)) w *= 0.5;
  if (!periodic(1) && (j == 0 || j == n2 - 1)) w *= 0.5;
  return w;
}

bool GridDomain::orthogonal_steps(double tol) const {
  return std::abs(step(0).dot(step(1))) <= tol * step(0).norm() * step(1).norm();
}

}  // namespace legvar
