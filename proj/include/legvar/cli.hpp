#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace legvar {

const char* library_version();
std::vector<std::string> default_observable_ids();

/// Bad flags or parameters; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;  // identities | surface | density | counterexample
  std::string family;   // surface: sw_cone, clifford, appendix; density: plane, plane2, blowdown, sw21, clifford
  unsigned seed = 1;
  std::vector<int> grid;  // refinement ladder, strictly increasing; empty = family default
  std::vector<int> k;
  std::vector<double> radii;
  double tol = -1.0;  // overrides the tolerance of every check when >= 0
  std::string out;    // empty = stdout
  std::string format = "json";
  int p = 2, q = 1;
  std::vector<std::string> observables = default_observable_ids();  // empty is a usage error
  std::string input;            // varifold CSV for density
  std::vector<double> center;   // empty or 5 coordinates
  std::string cutoff = "poly";  // poly | bump

  /// Throws UsageError.
  void validate() const;
};

struct RunResult {
  int exit_code = 0;   // 0 all checks pass, 1 a check failed, 2 usage or parse error
  std::string report;  // json or csv text, or the error message for exit code 2
};

RunResult cmd_identities(const RunConfig& c);
RunResult cmd_surface(const RunConfig& c);
RunResult cmd_density(const RunConfig& c);
RunResult cmd_counterexample(const RunConfig& c);

/// Validates, dispatches on c.command and turns UsageError, ParseError and
/// DomainError into exit code 2.
RunResult run(const RunConfig& c);

}  // namespace legvar
