#pragma once

// Worked examples with closed-form answers, and the constructive local-operation
// theorems for one-/two-parameter gates, diagonal correlations and two-sided access.

#include <vector>

#include "ugen/matching.hpp"
#include "ugen/measurement.hpp"

namespace ugen {

// ---- Werner states ---------------------------------------------------------

/// W(lambda) = lambda |Psi-><Psi-| + (1 - lambda) I/4; a = b = 0, T = -lambda I.
TwoQubitState werner_state(double lambda);

struct WernerSolution {
  double lambda = 0.0;
  double epsilon_min = 0.0;
  Vec3 axis = Vec3::UnitX();
  Vec3 zeta = Vec3::Zero();
  double fidelity = 1.0;
};

/// Threshold between the two branches, sqrt(3)/2.
double werner_branch_point();
double werner_epsilon_branch1(double lambda);
double werner_epsilon_branch2(double lambda);

/// Minimum measurement strength under U = CNOT. Axis (1,0,0) below the branch
/// point; above it n_x = -1/sqrt(4 lambda^2 - 2), n_y = 0, n_z = +sqrt(1 - n_x^2).
/// zeta comes from solve_env on the post-measurement state.
WernerSolution werner_epsilon_min(double lambda);

/// zeta_x = -[sqrt(1-eps^2)/n_x + (1 - sqrt(1-eps^2)) n_x] lambda/eps.
double werner_zeta_x(double lambda, double epsilon, double n_x);

struct FidelityPoint {
  double lambda;
  double fidelity;
};

std::vector<FidelityPoint> werner_fidelity_curve(const std::vector<double>& lambdas);

// ---- Bell state under CNOT -------------------------------------------------

struct BellCnotOptimum {
  WeakMeasurement measurement;
  Vec3 zeta;
  EnvSolution check;
};

/// eps = 2 sqrt(2)/3 along (1/sqrt2, 0, -1/sqrt2); zeta = (1, 0, 0).
BellCnotOptimum bell_cnot_optimum();

// ---- SWAP o CNOT ----------------------------------------------------------

Mat4c swap_cnot();

/// Closed-form environment vector for |Phi+> measured along n at strength eps:
/// (eps n_x, n_y (sqrt(1-eps^2) - 1)/eps, (n_z^2 + (1 - n_z^2) sqrt(1-eps^2))/(eps n_z)).
/// Throws AxisDegenerate for n_z = 0 and ParameterError for eps = 0.
Vec3 swapcnot_zeta(double epsilon, const Vec3& axis);

struct ProjectiveSolution {
  double epsilon;
  Vec3 zeta;
  EnvSolution check;
};

/// eps = 1 and zeta = (n_x, -n_y, n_z), checked with solve_env.
ProjectiveSolution swapcnot_projective_solution(const Vec3& axis);

/// (R_y(theta) (x) I) |Phi+><Phi+| (R_y(theta) (x) I)^dagger
TwoQubitState rotated_bell_state(double theta);

struct SweepPoint {
  double theta;
  double epsilon_min;
  Vec3 axis;
};

std::vector<SweepPoint> swapcnot_ry_sweep(const std::vector<double>& thetas, int workers = 1);

// ---- Constructive theorems --------------------------------------------------

struct Theorem1Certificate {
  Mat2c V = Mat2c::Identity();
  Vec3 zeta = Vec3::Zero();
  double residual = 0.0;
  double fidelity = 1.0;
  EnvSolution check;
};

/// Givens construction for U = Omega(p) with at least one angle in S.
/// Throws FamilyMismatch when no angle is in S.
Theorem1Certificate theorem1_construct(const NonlocalParams& p, const TwoQubitState& state,
                                       double tol = kDefaultMatchTol);

/// Same for an arbitrary gate, through its Cartan decomposition.
Theorem1Certificate theorem1_construct(const Mat4c& U, const TwoQubitState& state,
                                       double tol = kDefaultMatchTol);

/// Diagonal correlations: zeta = b_i e_i when alpha_i is in S; otherwise
/// (I - [v]x) zeta = b with v_i = a_i cot(2 alpha_i), solved in closed form.
EnvSolution diagonal_solve(const NonlocalParams& p, const Vec3& a, const Vec3& b, const Vec3& t_diag,
                           double tol = kDefaultMatchTol);

/// (|b|^2 + (b.v)^2)/(1 + |v|^2), the squared norm of the diagonal solution.
double diagonal_zeta_norm2(const NonlocalParams& p, const Vec3& a, const Vec3& b);

struct BothQubitSolution {
  Mat2c V1 = Mat2c::Identity();
  Mat2c V2 = Mat2c::Identity();
  EnvSolution solution;
};

/// Local unitaries on both qubits that undo the right-hand locals of U and
/// diagonalize T; the resulting configuration is solved by diagonal_solve and
/// checked against U directly.
BothQubitSolution both_qubit_construct(const Mat4c& U, const TwoQubitState& state,
                                       double tol = kDefaultMatchTol);

/// Bloch-vector form of (L1 (x) L2) rho (L1 (x) L2)^dagger.
TwoQubitState rotate_state(const TwoQubitState& s, const Mat3& O1, const Mat3& O2);

}  // namespace ugen
