#include "legvar/convergence.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace legvar {

double loglog_slope(const std::vector<double>& h, const std::vector<double>& err, double floor) {
  if (h.size() != err.size() || h.size() < 2) throw std::invalid_argument("loglog_slope: need matching ladders of length >= 2");
  bool all_floor = true;
  for (double e : err) {
    if (!std::isfinite(e) || e < 0.0) throw std::invalid_argument("loglog_slope: errors must be finite and non-negative");
    all_floor = all_floor && e <= floor;
  }
  if (all_floor) return std::numeric_limits<double>::infinity();
  // Errors under the floor are clamped so one exact level does not blow up the fit.
  double mx = 0, my = 0;
  const double m = static_cast<double>(h.size());
  std::vector<double> x(h.size()), y(h.size());
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (!(h[k] > 0.0)) throw std::invalid_argument("loglog_slope: h must be positive");
    x[k] = std::log(h[k]);
    y[k] = std::log(std::max(err[k], floor));
    mx += x[k] / m;
    my += y[k] / m;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
  }
  if (sxx <= 0.0) throw std::invalid_argument("loglog_slope: h values must differ");
  return sxy / sxx;
}

double Ladder::slope() const {
  std::vector<double> h;
  for (int k : n) h.push_back(1.0 / k);
  return loglog_slope(h, err);
}

}  // namespace legvar
