#pragma once

// Reduced dynamics of the correlated family
//   Lambda_p(tau) = tau (x) I/2 + (1 - p)(|Phi+><Phi+| - I/4)
// under U_t = exp(-i t CNOT), its dynamical matrix and realignment.
//
// Vectorization is row-major: vec(rho)_(2i+j) = rho_ij, and vec(rho') = A vec(rho).

#include <vector>

#include "ugen/matching.hpp"

namespace ugen {

/// Linear extension to arbitrary 2x2 X: X (x) I/2 + Tr(X)(1 - p)(Phi+ - I/4).
Mat4c lambda_operator(double p, const Mat2c& X);

/// Throws DomainError for |tau| > p and InvalidState when the result is not PSD.
TwoQubitState lambda_state(double p, const QubitState& tau);

/// cos t I - i sin t CNOT (CNOT is an involution).
Mat4c evolution_unitary(double t);
Mat4c evolve_time(double t, const Mat4c& rho);

/// Closed form with a = (1 - e^{-2it})(1 - p)/4.
Mat4c dynamical_matrix(double p, double t);

/// Column 2k+l is vec(Tr_E[U_t Lambda_p(|k><l|) U_t^dagger]).
Mat4c dynamical_matrix_numeric(double p, double t);

/// B_{(ij),(kl)} = A_{(ik),(jl)}
Mat4c realign(const Mat4c& A);

/// Ascending eigenvalues of the Hermitian part of realign(A).
Eigen::Vector4d realigned_spectrum(const Mat4c& A);

/// sin(t/2)(sin(t/2) - 1/2 sqrt(1 + 3 sin^2(t/2)))
double min_negative_eigenvalue_closed_form(double t);

/// Smallest eigenvalue of realign(dynamical_matrix(p, t)) for general p:
/// s(s - sqrt(s^2 + (1-p)^2 cos^2(t/2))), s = sin(t/2). Equal to the p-free form at p = 1/2.
double min_eigenvalue_general_p(double p, double t);

/// Same experiment with R = exp(-i pi/4 sigma_y) applied to the system before the
/// evolution; inputs are labelled by the unrotated state, i.e. the correlated
/// state is (R (x) I) Lambda_p(R^dagger tau R) (R (x) I)^dagger.
Mat4c mitigated_dynamical_matrix(double p, double t);

struct EnvSolutionSet {
  Vec3 min_norm = Vec3::Zero();
  std::vector<Vec3> null_basis;  // directions along which zeta is free
  double residual = 0.0;
};

/// Stacks the matching systems of Lambda_1(tau) under U_t for every tau and
/// describes the common solution set.
EnvSolutionSet env_solution_all_inputs(double t, const std::vector<QubitState>& taus);

/// Largest matching residual of a fixed zeta over the inputs.
double env_residual_all_inputs(double t, const std::vector<QubitState>& taus, const Vec3& zeta);

}  // namespace ugen
