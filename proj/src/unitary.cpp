#include "ugen/unitary.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace ugen {

namespace {

// Eigenvalues of (X(x)X, Y(x)Y, Z(x)Z) on the magic-basis columns.
constexpr std::array<std::array<double, 3>, 4> kBellCharges{{
    {1.0, -1.0, 1.0},
    {-1.0, 1.0, 1.0},
    {1.0, 1.0, -1.0},
    {-1.0, -1.0, -1.0},
}};

}  // namespace

bool in_special_set(double angle, double tol) {
  const double quarter = std::numbers::pi / 2.0;
  const double r = std::remainder(angle, quarter);
  return std::abs(r) <= tol;
}

UnitaryFamily classify(const NonlocalParams& p) {
  int outside = 0;
  for (int i = 0; i < 3; ++i) outside += in_special_set(p.alpha(i)) ? 0 : 1;
  return static_cast<UnitaryFamily>(outside);
}

LocalRotation::LocalRotation(const Vec3& axis, double angle) : axis_(axis), angle_(angle) {
  if (!axis_.allFinite() || std::abs(axis_.norm() - 1.0) > 1e-12) {
    throw ParameterError("rotation axis must be a unit vector");
  }
}

Mat4c magic_basis() {
  const double h = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  Mat4c B = Mat4c::Zero();
  B(0, 0) = h;
  B(3, 0) = h;
  B(0, 1) = i * h;
  B(3, 1) = -i * h;
  B(1, 2) = i * h;
  B(2, 2) = i * h;
  B(1, 3) = h;
  B(2, 3) = -h;
  return B;
}

Mat4c nonlocal_unitary(const NonlocalParams& p) {
  const Mat4c B = magic_basis();
  Eigen::Vector4cd phases;
  for (int k = 0; k < 4; ++k) {
    double arg = 0.0;
    for (int i = 0; i < 3; ++i) arg += p.alpha(i) * kBellCharges[k][i];
    phases(k) = std::polar(1.0, -arg);
  }
  return B * phases.asDiagonal() * B.adjoint();
}

Mat3 su2_to_so3(const Mat2c& L) {
  const auto& s = pauli();
  Mat3 O;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) O(i, j) = 0.5 * (s[i] * L * s[j] * L.adjoint()).trace().real();
  }
  return O;
}

Mat2c local_rotation_unitary(const LocalRotation& r) {
  const auto& s = pauli();
  Mat2c n_sigma = Mat2c::Zero();
  for (int i = 0; i < 3; ++i) n_sigma += r.axis()(i) * s[i];
  const Complex i(0.0, 1.0);
  return std::cos(r.angle() / 2.0) * Mat2c::Identity() - i * std::sin(r.angle() / 2.0) * n_sigma;
}

Mat3 givens(int i, int j, double theta) {
  if (i == j || i < 0 || j < 0 || i > 2 || j > 2) throw ParameterError("Givens plane needs two distinct axes");
  Mat3 G = Mat3::Identity();
  G(i, i) = std::cos(theta);
  G(j, j) = std::cos(theta);
  G(j, i) = std::sin(theta);
  G(i, j) = -std::sin(theta);
  return G;
}

Mat2c inducing_unitary(const Mat3& O) {
  if ((O.transpose() * O - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-9 || O.determinant() < 0.0) {
    throw ParameterError("inducing_unitary needs a proper rotation");
  }
  Eigen::Quaterniond q(O);
  q.normalize();
  const Complex i(0.0, 1.0);
  const auto& s = pauli();
  Mat2c L = q.w() * Mat2c::Identity() - i * (q.x() * s[0] + q.y() * s[1] + q.z() * s[2]);
  for (int k = 0; k < 4; ++k) {
    const Complex e = L(k / 2, k % 2);
    if (std::abs(e) > 1e-12) {
      L *= std::conj(e) / std::abs(e);
      break;
    }
  }
  return L;
}

double entangling_power(const NonlocalParams& p) {
  const double c1 = std::cos(4.0 * p.alpha(0));
  const double c2 = std::cos(4.0 * p.alpha(1));
  const double c3 = std::cos(4.0 * p.alpha(2));
  return (3.0 - c1 * (c2 + c3) - c2 * c3) / 4.0;
}

Mat4c assemble_global(const NonlocalParams& p, const Mat2c& L1, const Mat2c& L2, const Mat2c& R1,
                      const Mat2c& R2) {
  return kron(L1, L2) * nonlocal_unitary(p) * kron(R1, R2);
}

Mat4c KakForm::assemble() const { return phase * assemble_global(core, L1, L2, R1, R2); }

Mat4c cnot() {
  Mat4c U = Mat4c::Zero();
  U(0, 0) = U(1, 1) = 1.0;
  U(2, 3) = U(3, 2) = 1.0;
  return U;
}

Mat4c swap_gate() {
  Mat4c U = Mat4c::Zero();
  U(0, 0) = U(3, 3) = 1.0;
  U(1, 2) = U(2, 1) = 1.0;
  return U;
}

}  // namespace ugen
