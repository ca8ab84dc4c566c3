#pragma once

// Global and local unitary machinery for two qubits.
//
// Any two-qubit gate factors as U = phase (L1 (x) L2) Omega(alpha) (R1 (x) R2) with
//   Omega(alpha) = exp(-i (alpha_1 X(x)X + alpha_2 Y(x)Y + alpha_3 Z(x)Z)).
// Omega is diagonal in the Bell basis, which is how it is evaluated here.

#include "ugen/qstate.hpp"

namespace ugen {

struct NonlocalParams {
  Vec3 alpha = Vec3::Zero();
};

/// Number of nonlocal angles outside S = {n pi/2}.
enum class UnitaryFamily { Local = 0, OneParameter = 1, TwoParameter = 2, ThreeParameter = 3 };

/// Membership in S = {n pi/2}, tested modulo pi/2 with tolerance 1e-9.
bool in_special_set(double angle, double tol = 1e-9);
UnitaryFamily classify(const NonlocalParams& p);

class LocalRotation {
 public:
  LocalRotation(const Vec3& axis, double angle);
  const Vec3& axis() const { return axis_; }
  double angle() const { return angle_; }

 private:
  Vec3 axis_;
  double angle_;
};

Mat4c nonlocal_unitary(const NonlocalParams& p);

/// O_ij = 1/2 Tr(sigma_i L sigma_j L^dagger); the Bloch-vector action of rho -> L rho L^dagger.
Mat3 su2_to_so3(const Mat2c& L);

/// exp(-i angle/2 axis.sigma)
Mat2c local_rotation_unitary(const LocalRotation& r);

/// Counterclockwise rotation by theta in the (i, j) coordinate plane; i, j in {0, 1, 2}.
/// For i < j: G_ii = G_jj = cos, G_ji = sin, G_ij = -sin.
Mat3 givens(int i, int j, double theta);

/// A 2x2 unitary L with su2_to_so3(L) = O. Global phase is fixed so that the
/// first nonzero entry (row-major) is real and positive.
Mat2c inducing_unitary(const Mat3& O);

/// Normalized entangling power (3 - c1 (c2 + c3) - c2 c3) / 4, c_i = cos(4 alpha_i).
double entangling_power(const NonlocalParams& p);

/// (L1 (x) L2) Omega (R1 (x) R2)
Mat4c assemble_global(const NonlocalParams& p, const Mat2c& L1, const Mat2c& L2, const Mat2c& R1,
                      const Mat2c& R2);

struct KakForm {
  NonlocalParams core;
  Mat2c L1 = Mat2c::Identity();
  Mat2c L2 = Mat2c::Identity();
  Mat2c R1 = Mat2c::Identity();
  Mat2c R2 = Mat2c::Identity();
  Complex phase{1.0, 0.0};

  Mat4c assemble() const;
};

/// Cartan decomposition of an arbitrary 4x4 unitary via the magic basis.
/// The returned angles are not canonicalized to the Weyl chamber.
KakForm kak_decompose(const Mat4c& U);

/// CNOT with the system (first) qubit as control.
Mat4c cnot();
Mat4c swap_gate();

/// Columns: (|00>+|11>)/sqrt2, i(|00>-|11>)/sqrt2, i(|01>+|10>)/sqrt2, (|01>-|10>)/sqrt2.
Mat4c magic_basis();

}  // namespace ugen
