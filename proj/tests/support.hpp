#pragma once

// Random fixtures shared by the unit and acceptance tests.

#include <random>

#include "ugen/qstate.hpp"

namespace ugen::testing {

inline Eigen::MatrixXcd gaussian_matrix(std::mt19937_64& g, int rows, int cols) {
  std::normal_distribution<double> n;
  Eigen::MatrixXcd Z(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) Z(i, j) = Complex(n(g), n(g));
  }
  return Z;
}

/// Haar-random unitary from the phase-corrected QR of a Ginibre matrix.
inline Eigen::MatrixXcd haar_unitary(std::mt19937_64& g, int dim) {
  const Eigen::MatrixXcd Z = gaussian_matrix(g, dim, dim);
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
  Eigen::MatrixXcd Q = qr.householderQ();
  const Eigen::MatrixXcd R = qr.matrixQR();
  for (int i = 0; i < dim; ++i) Q.col(i) *= R(i, i) / std::abs(R(i, i));
  return Q;
}

inline Mat4c haar4(std::mt19937_64& g) { return haar_unitary(g, 4); }
inline Mat2c haar2(std::mt19937_64& g) { return haar_unitary(g, 2); }

/// Full-rank random density operator G G^dagger / Tr.
inline Mat4c random_density4(std::mt19937_64& g) {
  const Mat4c Z = gaussian_matrix(g, 4, 4);
  Mat4c r = Z * Z.adjoint();
  return r / r.trace();
}

inline TwoQubitState random_state(std::mt19937_64& g) { return decompose(random_density4(g)); }

inline Mat2c random_density2(std::mt19937_64& g) {
  const Mat2c Z = gaussian_matrix(g, 2, 2);
  Mat2c r = Z * Z.adjoint();
  return r / r.trace();
}

inline Vec3 random_unit(std::mt19937_64& g) {
  std::normal_distribution<double> n;
  Vec3 v(n(g), n(g), n(g));
  return v.normalized();
}

/// Uniform point of the Bloch ball.
inline Vec3 random_bloch(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return random_unit(g) * std::cbrt(u(g));
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace ugen::testing
