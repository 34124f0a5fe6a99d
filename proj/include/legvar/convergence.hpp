#pragma once

#include <vector>

namespace legvar {

/// Least-squares slope of log err against log h (positive for convergent
/// ladders). When every error is at or below `floor` the ladder counts as
/// converged to roundoff and +infinity is returned.
double loglog_slope(const std::vector<double>& h, const std::vector<double>& err,
                    double floor = 1e-12);

/// Ladder of residuals on grids n, with h = 1 / n.
struct Ladder {
  std::vector<int> n;
  std::vector<double> err;
  double slope() const;
};

}  // namespace legvar
