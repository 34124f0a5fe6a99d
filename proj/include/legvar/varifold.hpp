#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "legvar/cutoff.hpp"
#include "legvar/hamiltonian.hpp"

namespace legvar {

/// Raised when a density estimate has too little data to be meaningful.
class DiagnosticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VarifoldSample {
  LegendrianPlane plane;
  double weight = 0.0;
};

/// Weighted plane samples approximating a Legendrian varifold.
struct DiscreteVarifold {
  std::vector<VarifoldSample> samples;

  std::size_t size() const { return samples.size(); }
  double mass() const;
  /// Throws DomainError on non-positive or non-finite weights.
  void validate() const;
  void append(const DiscreteVarifold& o);
  /// Every sample moved by left multiplication with q.
  DiscreteVarifold translated(const HPoint& q) const;
  /// Push-forward under the dilation delta_t (weights scale by t^2).
  DiscreteVarifold dilated(double t) const;
  /// Median Koranyi distance to the nearest other sample, over a
  /// deterministic subset of at most `probes` samples.
  double median_spacing(std::size_t probes = 256) const;
};

struct ThetaTerms {
  double radial = 0.0;    // -|grad^P r|^2 / r * a^-1 chi'
  double vertical = 0.0;  // -(2 phi / r^3) a^-1 chi' arctan sigma
  double mixed = 0.0;     // (1/4) r^4 grad^P arctan sigma . grad^P[r^-3 a^-1 chi' arctan sigma]
  double total() const { return radial + vertical + mixed; }
  /// Two-term integrand whose limit defines the density.
  double limit() const { return radial + vertical; }
};

ThetaTerms capital_theta_terms(const DiscreteVarifold& v, const HPoint& q, double a,
                               const CutoffProfile& chi);
double capital_theta(const DiscreteVarifold& v, const HPoint& q, double a, const CutoffProfile& chi);

struct DensityOptions {
  double spacing = -1.0;      // nearest-sample spacing; estimated when negative
  double floor_factor = 5.0;  // radii below floor_factor * spacing are skipped
  std::size_t fit_count = 0;  // smallest radii used in the fit; 0 = all valid
};

struct DensityReport {
  HPoint center;
  std::vector<double> radii;         // valid radii, increasing
  std::vector<double> theta_values;  // full three-term quantity
  std::vector<double> limit_values;  // two-term integrand
  std::vector<double> skipped_radii;
  double spacing = 0.0;
  double extrapolated_density = 0.0;
  double fit_alpha = 0.0;
  double fit_c = 0.0;
  double smallest_radius_value = 0.0;
  double spread = 0.0;  // max - min of theta_values
  double monotonicity_violation = 0.0;
  double relative_violation = 0.0;  // violation / theta at the largest radius
};

/// Theta at each radius plus monotonicity diagnostics, no extrapolation.
DensityReport monotonicity_scan(const DiscreteVarifold& v, const HPoint& q,
                                const std::vector<double>& radii, const CutoffProfile& chi,
                                const DensityOptions& opt = {});
/// As monotonicity_scan, then fits Theta(a) = theta + c a^alpha with
/// alpha in [0.5, 2]. Needs at least three valid radii.
DensityReport density(const DiscreteVarifold& v, const HPoint& q, const CutoffProfile& chi,
                      const std::vector<double>& radii, const DensityOptions& opt = {});

/// Least-squares fit of y = theta + c x^alpha over an alpha grid on [0.5, 2].
struct PowerFit {
  double theta, c, alpha, rms;
};
PowerFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

/// Sum of weight * div_P W_F over the samples.
double stationarity_pairing(const DiscreteVarifold& v, const ScalarField& f);

struct MassRatio {
  double ratio = 0.0;
  double ball_mass = 0.0;
  double annulus_mass = 0.0;
  bool degenerate = false;  // empty annulus
};
/// (|v|(B_r(q)) / r^2) / (|v|(B_2s \ B_s) / s^2), requires 0 < r <= s/2.
MassRatio mass_ratio_check(const DiscreteVarifold& v, const HPoint& q, double r, double s);

/// Sum of weight * |grad^P arctan sigma_q|^2 over samples with 0 < r_q < b.
double arctan_sigma_dirichlet(const DiscreteVarifold& v, const HPoint& q, double b);

/// Square patch of side 2*half_width of the Legendrian plane through q with
/// the given tangent unitary, n x n trapezoid nodes, weight multiplied by mult.
DiscreteVarifold flat_plane_varifold(const HPoint& q, const Eigen::Matrix2cd& u, double half_width,
                                     int n, double mult = 1.0);
/// Limit of the Clifford lift: samples on the phi-axis |phi| <= phi_max with
/// weight 2 pi dphi, spread uniformly over the planes P^(a,b).
DiscreteVarifold clifford_blowdown_varifold(double phi_max, int n_phi, int n_ab);
/// Two half-planes sharing the line R e3 with a kink of angle kappa between
/// them; not stationary along the kink.
DiscreteVarifold tilted_strip_varifold(double kappa, double half_width, int n);

}  // namespace legvar
