#pragma once

#include <functional>
#include <memory>
#include <string>

#include "legvar/heisenberg.hpp"

namespace legvar {

using Jet5 = Jet<5>;

/// Value, coordinate gradient and coordinate Hessian in (z1..z4, phi).
struct FieldJet {
  double value = 0.0;
  Vec5 grad = Vec5::Zero();
  Mat5 hess = Mat5::Zero();
};

/// Scalar map on H^2 with a derivative contract. Fields built from a jet
/// function carry exact derivatives; sampled fields fall back to centered
/// differences with step h_fd = 1e-5 (1 + r(p)) unless overridden.
class ScalarField {
 public:
  using JetFn = std::function<Jet5(const HCoords<Jet5>&)>;
  using ValueFn = std::function<double(const HPoint&)>;

  ScalarField() = default;

  static ScalarField from_jet(JetFn f, std::string name = "");
  static ScalarField sampled(ValueFn f, std::string name = "");

  double operator()(const HPoint& p) const;
  FieldJet derivatives(const HPoint& p) const;
  FieldJet fd_derivatives(const HPoint& p, double h = 0.0) const;
  bool has_analytic() const { return static_cast<bool>(jet_); }
  const std::string& name() const { return name_; }

  /// x -> f(q^{-1} * x).
  ScalarField left_translated(const HPoint& q) const;
  /// Drops the analytic path, keeping only values (for cross-checks).
  ScalarField as_sampled() const;

  ScalarField operator+(const ScalarField& o) const;
  ScalarField operator*(double s) const;

 private:
  JetFn jet_;
  ValueFn value_;
  std::string name_;
};

inline HCoords<Jet5> seed_coords(const HPoint& p) {
  HCoords<Jet5> x;
  for (int k = 0; k < 4; ++k) x[k] = Jet5::variable(p.z[k], k);
  x[4] = Jet5::variable(p.phi, 4);
  return x;
}

enum class BasicField { gauge, arctan_sigma, phi };

/// The gauge, arctan sigma or phi, left-translated to center q.
ScalarField translated_field(BasicField which, const HPoint& q);

/// Linear coordinate function x_k (k = 0..3 for z, 4 for phi).
ScalarField coordinate_field(int k);

/// Smooth compactly supported test Hamiltonian: a sum of `terms` random
/// Gaussian-weighted polynomials times a cutoff in the gauge around `center`
/// vanishing for r >= radius. Deterministic in seed.
ScalarField random_bump_hamiltonian(const HPoint& center, double radius, unsigned seed,
                                    int terms = 3);

}  // namespace legvar
