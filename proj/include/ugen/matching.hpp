#pragma once

// The dynamics-matching condition: find an environment state zeta with
//   Tr_E[U (rho_S (x) zeta) U^dagger] = Tr_E[U rho_SE U^dagger].
// In system-Pauli components this is a 3x3 linear system A zeta = c.

#include "ugen/channel.hpp"
#include "ugen/unitary.hpp"

namespace ugen {

enum class Feasibility { Valid, Invalid, Inconsistent };

const char* to_string(Feasibility f);

struct EnvSolution {
  Vec3 zeta = Vec3::Zero();
  double residual_norm = 0.0;
  Feasibility feasibility = Feasibility::Inconsistent;

  bool valid() const { return feasibility == Feasibility::Valid; }
};

struct MatchingSystem {
  Mat3 A;
  Vec3 c;
};

/// A_ik = Tr[(s_i (x) I) U (rho_S (x) s_k/2) U^dagger],
/// c_i  = Tr[(s_i (x) I) U rho_SE U^dagger] - Tr[(s_i (x) I) U (rho_S (x) I/2) U^dagger].
MatchingSystem matching_system(const Mat4c& U, const TwoQubitState& state);

/// Same system for U = Omega(p), built from the closed-form residuals.
MatchingSystem matching_system(const NonlocalParams& p, const TwoQubitState& state);
MatchingSystem matching_system(const NonlocalParams& p, const Vec3& a, const Vec3& b, const Mat3& T);

/// Minimum-norm least-squares solution by SVD (singular values below 1e-12 dropped),
/// then classified: residual above tol is Inconsistent; otherwise Valid when
/// |zeta| <= 1 (+1e-9 round-off slack) and Invalid when larger.
EnvSolution solve_system(const MatchingSystem& sys, double tol = kDefaultMatchTol);

EnvSolution solve_env(const Mat4c& U, const TwoQubitState& state, double tol = kDefaultMatchTol);
EnvSolution solve_env(const NonlocalParams& p, const TwoQubitState& state, double tol = kDefaultMatchTol);

/// Classify a given zeta against the system of (U, state).
EnvSolution check_env(const Mat4c& U, const TwoQubitState& state, const Vec3& zeta,
                      double tol = kDefaultMatchTol);

struct MatchingResiduals {
  Vec3 r = Vec3::Zero();
};

/// The three scalar conditions for U = Omega(alpha), with s_i = sin 2alpha_i and
/// c_i = cos 2alpha_i:
///   r1 = (t32 - a3 z2) c3 s2 + ((-t23 + a2 z3) c2 + (b1 - z1) s2) s3
///   r2 = (-t31 + a3 z1) c3 s1 + ((t13 - a1 z3) c1 + (b2 - z2) s1) s3
///   r3 = (t21 - a2 z1) c2 s1 + ((-t12 + a1 z2) c1 + (b3 - z3) s1) s2
/// They equal c - A zeta of the matching system.
MatchingResiduals matching_residuals(const NonlocalParams& p, const Vec3& a, const Vec3& b, const Mat3& T,
                                     const Vec3& zeta);

/// K_{j,eta} = sqrt(p_j) <eta|_E U |zeta_j>_E from the spectral decomposition of zeta.
/// Zero-weight components are dropped.
KrausChannel kraus_from_env(const Mat4c& U, const QubitState& zeta);

/// Tr_E[U rho U^dagger]
Mat2c reduced_output(const Mat4c& U, const Mat4c& rho);

}  // namespace ugen
