#include "legvar/cutoff.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace legvar {

namespace {

constexpr int kTableCells = 2048;

double bump_raw(double t) {
  if (t <= 1.0 || t >= 2.0) return 0.0;
  return std::exp(-1.0 / ((t - 1.0) * (2.0 - t)));
}

}  // namespace

CutoffProfile::CutoffProfile(CutoffKind kind) : kind_(kind) {
  if (kind_ != CutoffKind::bump) return;
  // Cell integrals of the unnormalized bump; cumulative sums give chi at nodes.
  auto tab = std::make_shared<std::vector<double>>(kTableCells + 1, 0.0);
  const double h = 1.0 / kTableCells;
  std::vector<double> cell(kTableCells);
  double total = 0.0;
  for (int i = 0; i < kTableCells; ++i) {
    const double a = 1.0 + i * h;
    cell[i] = boost::math::quadrature::gauss<double, 20>::integrate(bump_raw, a, a + h);
    total += cell[i];
  }
  bump_norm_ = 1.0 / total;
  // Accumulate from the right so that chi(2) = 0 exactly.
  double acc = 0.0;
  for (int i = kTableCells - 1; i >= 0; --i) {
    acc += cell[i];
    (*tab)[i] = acc * bump_norm_;
  }
  (*tab)[0] = 1.0;
  table_ = tab;
}

double CutoffProfile::dchi(double t) const {
  if (t <= 1.0 || t >= 2.0) return 0.0;
  if (kind_ == CutoffKind::poly) {
    const double s = std::sin(std::numbers::pi * (t - 1.0));
    return -(8.0 / 3.0) * s * s * s * s;
  }
  return -bump_norm_ * bump_raw(t);
}

double CutoffProfile::d2chi(double t) const {
  if (t <= 1.0 || t >= 2.0) return 0.0;
  if (kind_ == CutoffKind::poly) {
    const double u = std::numbers::pi * (t - 1.0);
    const double s = std::sin(u);
    return -(32.0 * std::numbers::pi / 3.0) * s * s * s * std::cos(u);
  }
  const double g = (t - 1.0) * (2.0 - t);
  return -bump_norm_ * bump_raw(t) * (3.0 - 2.0 * t) / (g * g);
}

double CutoffProfile::chi(double t) const {
  if (t <= 1.0) return 1.0;
  if (t >= 2.0) return 0.0;
  if (kind_ == CutoffKind::poly) {
    const double u = t - 1.0;
    const double pi = std::numbers::pi;
    return 1.0 - (8.0 / 3.0) * (3.0 * u / 8.0 - std::sin(2.0 * pi * u) / (4.0 * pi) +
                                std::sin(4.0 * pi * u) / (32.0 * pi));
  }
  // Cubic Hermite on the cumulative table with exact slopes.
  const double h = 1.0 / kTableCells;
  const double x = (t - 1.0) / h;
  int i = static_cast<int>(x);
  if (i >= kTableCells) i = kTableCells - 1;
  const double s = x - i;
  const double y0 = (*table_)[i], y1 = (*table_)[i + 1];
  const double m0 = dchi(1.0 + i * h) * h, m1 = dchi(1.0 + (i + 1) * h) * h;
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * y1 +
         (s3 - s2) * m1;
}

CutoffProfile make_cutoff(CutoffKind kind) { return CutoffProfile(kind); }

CutoffKind parse_cutoff_kind(const std::string& s) {
  if (s == "poly") return CutoffKind::poly;
  if (s == "bump") return CutoffKind::bump;
  throw std::invalid_argument("unknown cutoff kind: " + s);
}

}  // namespace legvar
