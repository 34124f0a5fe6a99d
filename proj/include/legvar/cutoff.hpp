#pragma once

#include <memory>
#include <string>
#include <vector>

namespace legvar {

enum class CutoffKind { poly, bump };

/// Cutoff chi with chi = 1 on [0,1], chi = 0 on [2,inf) and -chi' = eta^2.
///   poly: -chi'(t) = (8/3) sin^4(pi (t-1)) on [1,2]
///   bump: -chi'(t) = c exp(-1/((t-1)(2-t))), c normalizing the integral
class CutoffProfile {
 public:
  explicit CutoffProfile(CutoffKind kind = CutoffKind::poly);

  double chi(double t) const;
  double dchi(double t) const;
  double d2chi(double t) const;
  CutoffKind kind() const { return kind_; }
  std::string name() const { return kind_ == CutoffKind::poly ? "poly" : "bump"; }

 private:
  CutoffKind kind_;
  double bump_norm_ = 1.0;
  // Cumulative table for the bump profile on [1,2].
  std::shared_ptr<const std::vector<double>> table_;
};

CutoffProfile make_cutoff(CutoffKind kind);
CutoffKind parse_cutoff_kind(const std::string& s);

}  // namespace legvar
