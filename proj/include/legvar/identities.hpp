#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace legvar {

struct IdentityResult {
  std::string name;
  double residual = 0.0;   // worst value over the samples
  double tolerance = 0.0;
  std::size_t samples = 0;
  bool pass = false;
};

struct IdentityOptions {
  unsigned seed = 1;
  std::size_t samples = 1000;
  double tol_override = -1.0;  // applied to every identity when >= 0
};

struct IdentitySuite {
  std::vector<IdentityResult> results;
  bool all_pass() const;
  std::vector<std::string> failing() const;
};

/// Group axioms, Koranyi metric axioms and invariances, frame, gradient
/// identities of r and arctan sigma, the plane-divergence identities and the
/// pointwise monotonicity identity, all at random configurations.
IdentitySuite run_identity_suite(const IdentityOptions& opt = {});

}  // namespace legvar
