#include "ugen/measurement.hpp"

#include <cmath>

namespace ugen {

namespace {

constexpr double kHTol = 1e-12;

double check_epsilon(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ParameterError("measurement strength must lie in [0, 1]");
  return epsilon;
}

}  // namespace

WeakMeasurement::WeakMeasurement(double epsilon, const Vec3& axis)
    : epsilon_(check_epsilon(epsilon)), axis_(axis) {
  if (!axis_.allFinite() || std::abs(axis_.norm() - 1.0) > 1e-12) {
    throw ParameterError("measurement axis must be a unit vector");
  }
}

double WeakMeasurement::coeff_plus() const {
  return std::sqrt((1.0 + epsilon_) / 2.0) + std::sqrt((1.0 - epsilon_) / 2.0);
}

double WeakMeasurement::coeff_minus() const {
  return std::sqrt((1.0 + epsilon_) / 2.0) - std::sqrt((1.0 - epsilon_) / 2.0);
}

MeasurementOperators build_operators(const WeakMeasurement& m) {
  const auto& s = pauli();
  Mat2c n_sigma = Mat2c::Zero();
  for (int i = 0; i < 3; ++i) n_sigma += m.axis()(i) * s[i];
  const Mat2c id = Mat2c::Identity();
  return {0.5 * (m.coeff_plus() * id + m.coeff_minus() * n_sigma),
          0.5 * (m.coeff_plus() * id - m.coeff_minus() * n_sigma)};
}

MeasurementOutcome apply_closed_form(const TwoQubitState& state, const WeakMeasurement& m, Outcome sign) {
  // The minus outcome is the plus transform with eps -> -eps.
  const double eps = sign_of(sign) * m.epsilon();
  const Vec3& n = m.axis();
  const double probability = 0.5 * (1.0 + eps * n.dot(state.a()));
  if (probability < kProbabilityFloor) {
    throw DegenerateOutcome("measurement outcome has vanishing probability");
  }
  const double norm = 1.0 + eps * n.dot(state.a());
  const double root = std::sqrt(std::max(0.0, 1.0 - eps * eps));
  const Mat3 nn = n * n.transpose();

  const Vec3 b = (state.b() + eps * state.T().transpose() * n) / norm;
  const Vec3 a = (root * state.a() + (1.0 - root) * nn * state.a() + eps * n) / norm;
  const Mat3 T = (root * state.T() + (1.0 - root) * nn * state.T() + eps * n * state.b().transpose()) / norm;
  return {sign, TwoQubitState(a, b, T), probability};
}

double measurement_fidelity(const Vec3& a, const WeakMeasurement& m, Outcome sign) {
  const double an = a.dot(m.axis());
  const double eps = m.epsilon();
  const double denom = 2.0 * (1.0 + sign_of(sign) * eps * an);
  if (denom < kProbabilityFloor) throw DegenerateOutcome("measurement outcome has vanishing probability");
  return 1.0 - (1.0 - an * an) * (1.0 - std::sqrt(1.0 - eps * eps)) / denom;
}

std::pair<double, double> power_coefficients(double epsilon, int k) {
  check_epsilon(epsilon);
  if (k < 1) throw ParameterError("power must be a positive integer");
  const double up = std::pow((1.0 + epsilon) / 2.0, k / 2.0);
  const double down = std::pow((1.0 - epsilon) / 2.0, k / 2.0);
  return {up + down, up - down};
}

double repeated_measurement_h(double epsilon, int k) {
  return std::pow(1.0 + epsilon, k) + std::pow(1.0 - epsilon, k);
}

std::optional<double> single_shot_equivalent(double epsilon, int k) {
  check_epsilon(epsilon);
  if (k < 1) throw ParameterError("power must be a positive integer");
  if (k == 1) return epsilon;
  // Trivial rounds: M_pm^k is proportional to I, same action as eps' = 0.
  if (epsilon <= kHTol) return 0.0;
  // Exact coefficient match requires (eps~_+)^2 + (eps~_-)^2 = 2, i.e. h = 2^k.
  if (std::abs(repeated_measurement_h(epsilon, k) - std::pow(2.0, k)) <= kHTol * std::pow(2.0, k)) {
    return 1.0;
  }
  return std::nullopt;
}

}  // namespace ugen
