#pragma once

// Two-qubit state algebra in Pauli coordinates.
//
// Ordering is system (x) environment throughout: basis index = 2*s + e.
// Pauli index convention: (sigma_1, sigma_2, sigma_3) = (X, Y, Z).

#include <array>

#include "ugen/types.hpp"

namespace ugen {

const std::array<Mat2c, 3>& pauli();
Mat2c pauli(int i);

Mat4c kron(const Mat2c& lhs, const Mat2c& rhs);

/// Single-qubit state held by its Bloch vector; |bloch| <= 1.
class QubitState {
 public:
  explicit QubitState(const Vec3& bloch);

  const Vec3& bloch() const { return bloch_; }
  Mat2c density() const;

  /// Throws InvalidState for non-Hermitian or non-unit-trace input.
  static QubitState from_density(const Mat2c& rho);

 private:
  Vec3 bloch_;
};

/// Canonical representation of a two-qubit operator
///   rho = 1/4 (I(x)I + a.sigma(x)I + I(x)b.sigma + sum_ij T_ij sigma_i(x)sigma_j).
/// Local Bloch vectors are checked against the unit ball on construction;
/// positivity of the full operator is checked separately by is_valid().
class TwoQubitState {
 public:
  TwoQubitState(const Vec3& a, const Vec3& b, const Mat3& T);

  const Vec3& a() const { return a_; }
  const Vec3& b() const { return b_; }
  const Mat3& T() const { return T_; }

  static TwoQubitState maximally_mixed();
  static TwoQubitState product(const Vec3& a, const Vec3& b);

 private:
  Vec3 a_;
  Vec3 b_;
  Mat3 T_;
};

enum class Subsystem { System, Environment };

TwoQubitState decompose(const Mat4c& rho);
Mat4c reconstruct(const TwoQubitState& state);

Mat2c partial_trace(const Mat4c& rho, Subsystem keep);

/// Uhlmann fidelity for qubits: Tr(rho sigma) + 2 sqrt(det rho det sigma).
double fidelity_qubit(const Mat2c& rho, const Mat2c& sigma);

struct Validity {
  bool valid;
  double min_eigenvalue;
};

Validity is_valid(const TwoQubitState& state);

Vec3 bloch_vector(const Mat2c& rho);
Mat2c qubit_density(const Vec3& bloch);

bool is_hermitian(const Eigen::Ref<const Eigen::MatrixXcd>& m, double tol = kPsdTol);
bool is_unitary(const Eigen::Ref<const Eigen::MatrixXcd>& m, double tol = kUnitaryTol);

/// Local operation on the system side: (L(x)I) rho (L(x)I)^dagger, no renormalization.
Mat4c conjugate_system(const Mat4c& rho, const Mat2c& op);
Mat4c conjugate(const Mat4c& rho, const Mat4c& op);

/// Bell state |Phi+> = (|00> + |11>)/sqrt(2) as a density operator.
Mat4c bell_phi_plus();

}  // namespace ugen
