#pragma once

// Two-outcome weak measurements on the system qubit,
//   M_pm = 1/2 (eps_+ I pm eps_- n.sigma),
//   eps_pm = sqrt((1+eps)/2) pm sqrt((1-eps)/2),
// with M_+^2 + M_-^2 = I. eps = 0 is the identity instrument, eps = 1 a
// projective measurement along n.

#include <optional>
#include <utility>

#include "ugen/qstate.hpp"

namespace ugen {

class WeakMeasurement {
 public:
  /// Throws ParameterError unless 0 <= epsilon <= 1 and |axis| = 1 (1e-12).
  WeakMeasurement(double epsilon, const Vec3& axis);

  double epsilon() const { return epsilon_; }
  const Vec3& axis() const { return axis_; }
  double coeff_plus() const;
  double coeff_minus() const;

 private:
  double epsilon_;
  Vec3 axis_;
};

enum class Outcome { Plus, Minus };

inline double sign_of(Outcome o) { return o == Outcome::Plus ? 1.0 : -1.0; }

struct MeasurementOperators {
  Mat2c plus;
  Mat2c minus;
};

MeasurementOperators build_operators(const WeakMeasurement& m);

struct MeasurementOutcome {
  Outcome sign;
  TwoQubitState post_state;
  double probability;
};

/// Post-selected state after outcome `sign`, from the closed-form transform of
/// (a, b, T). Throws DegenerateOutcome when the outcome probability is below 1e-14.
MeasurementOutcome apply_closed_form(const TwoQubitState& state, const WeakMeasurement& m, Outcome sign);

/// Fidelity between rho^S (Bloch vector a) and its normalized post-measurement state.
double measurement_fidelity(const Vec3& a, const WeakMeasurement& m, Outcome sign);

/// Coefficients (eps~_+^k, eps~_-^k) with M_pm^k = 1/2 (eps~_+^k I pm eps~_-^k n.sigma).
std::pair<double, double> power_coefficients(double epsilon, int k);

/// h(eps) = (1+eps)^k + (1-eps)^k. The k-fold operators carry a valid
/// single-measurement coefficient pair exactly when h(eps) = 2^k.
double repeated_measurement_h(double epsilon, int k);

/// Strength eps' of one measurement that reproduces k repeated rounds, if any.
/// Returns eps' = 1 for projective rounds, eps' = 0 for trivial rounds
/// (M^k proportional to I) and nullopt otherwise.
std::optional<double> single_shot_equivalent(double epsilon, int k);

}  // namespace ugen
