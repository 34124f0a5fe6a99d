#pragma once

#include <Eigen/Core>
#include <Eigen/LU>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace legvar {

enum class Topology { rectangle, cylinder, torus };

std::string topology_name(Topology t);

/// Lattice grid in conformal coordinates x = origin + i h1 + j h2.
///   rectangle: nodes include both ends, h_k = edge_k / (n_k - 1)
///   cylinder:  periodic in the second direction only
///   torus:     periodic in both, h_k = edge_k / n_k (edges are lattice vectors)
struct GridDomain {
  Topology topology = Topology::rectangle;
  Eigen::Vector2d origin = Eigen::Vector2d::Zero();
  Eigen::Vector2d edge1 = Eigen::Vector2d(1, 0);
  Eigen::Vector2d edge2 = Eigen::Vector2d(0, 1);
  int n1 = 4;
  int n2 = 4;

  static GridDomain rectangle(const Eigen::Vector2d& lo, const Eigen::Vector2d& hi, int n1, int n2);
  static GridDomain cylinder(double s0, double s1, double period, int n1, int n2);
  static GridDomain torus(const Eigen::Vector2d& origin, const Eigen::Vector2d& l1,
                          const Eigen::Vector2d& l2, int n1, int n2);

  /// Throws std::invalid_argument on n < 4 or degenerate lattice.
  void validate() const;

  bool periodic(int dir) const;
  Eigen::Vector2d step(int dir) const;
  Eigen::Matrix2d step_matrix() const;  // columns h1, h2
  Eigen::Vector2d node(int i, int j) const { return origin + i * step(0) + j * step(1); }
  std::size_t size() const { return static_cast<std::size_t>(n1) * n2; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n2 + j; }
  std::pair<int, int> ij(std::size_t k) const { return {static_cast<int>(k / n2), static_cast<int>(k % n2)}; }
  double cell_area() const;
  /// Trapezoidal quadrature weight (cell area, halved on each open boundary).
  double weight(int i, int j) const;
  bool orthogonal_steps(double tol = 1e-12) const;
};

/// Wraps an index along a periodic direction; `turns` counts the periods crossed.
inline int wrap_index(int i, int n, int& turns) {
  turns = 0;
  while (i < 0) {
    i += n;
    --turns;
  }
  while (i >= n) {
    i -= n;
    ++turns;
  }
  return i;
}

/// Second-order first derivative along grid direction `dir` (per index step):
/// centered in the interior and across periodic seams, one-sided at open ends.
/// get(i, j) must accept indices one step outside periodic ranges.
template <typename T, typename Get>
T index_derivative(const GridDomain& d, int dir, int i, int j, const Get& get) {
  const int n = dir == 0 ? d.n1 : d.n2;
  const int k = dir == 0 ? i : j;
  auto at = [&](int off) { return dir == 0 ? get(i + off, j) : get(i, j + off); };
  if (d.periodic(dir) || (k > 0 && k < n - 1)) return T(0.5 * (at(1) - at(-1)));
  if (k == 0) return T(-1.5 * at(0) + 2.0 * at(1) - 0.5 * at(2));
  return T(1.5 * at(0) - 2.0 * at(-1) + 0.5 * at(-2));
}

/// Second difference along `dir` per index step; only for nodes with both
/// neighbours (interior or periodic).
template <typename T, typename Get>
T index_second_derivative(const GridDomain& /*d*/, int dir, int i, int j, const Get& get) {
  auto at = [&](int off) { return dir == 0 ? get(i + off, j) : get(i, j + off); };
  return T(at(1) - 2.0 * at(0) + at(-1));
}

inline bool has_both_neighbours(const GridDomain& d, int i, int j) {
  const bool a = d.periodic(0) || (i > 0 && i < d.n1 - 1);
  const bool b = d.periodic(1) || (j > 0 && j < d.n2 - 1);
  return a && b;
}

using NodeMask = std::function<bool(int i, int j)>;
inline bool all_nodes(int, int) { return true; }

}  // namespace legvar
