#include <array>
#include <cmath>

#include "ugen/unitary.hpp"

namespace ugen {

namespace {

// Split X = A (x) C. X must be a (numerically exact) product of 2x2 unitaries.
std::pair<Mat2c, Mat2c> split_product(const Mat4c& X) {
  Eigen::Index r = 0, c = 0;
  X.cwiseAbs().maxCoeff(&r, &c);
  const int i = static_cast<int>(r) / 2, j = static_cast<int>(r) % 2;
  const int k = static_cast<int>(c) / 2, l = static_cast<int>(c) % 2;
  Mat2c A, C;
  for (int m = 0; m < 2; ++m) {
    for (int n = 0; n < 2; ++n) {
      A(m, n) = X(2 * m + j, 2 * n + l);
      C(m, n) = X(2 * i + m, 2 * k + n);
    }
  }
  A /= X(r, c);
  const Complex d = std::sqrt(A.determinant());
  A /= d;
  C *= d;
  return {A, C};
}

Eigen::Matrix4d simultaneous_diagonalizer(const Mat4c& M) {
  // Re(M) and Im(M) commute for symmetric unitary M; a generic real combination
  // shares their eigenbasis.
  constexpr std::array<double, 4> kMix{0.5772156649, 1.6180339887, -0.7071067812, 2.7182818284};
  Eigen::Matrix4d best = Eigen::Matrix4d::Identity();
  double best_off = 1e300;
  for (double r : kMix) {
    const Eigen::Matrix4d S = M.real() + r * M.imag();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(S);
    const Eigen::Matrix4d P = es.eigenvectors();
    Mat4c D = P.transpose().cast<Complex>() * M * P.cast<Complex>();
    D.diagonal().setZero();
    const double off = D.cwiseAbs().maxCoeff();
    if (off < best_off) {
      best_off = off;
      best = P;
    }
    if (off < 1e-12) break;
  }
  if (best_off > 1e-8) throw InternalError("KAK: failed to diagonalize the symmetric unitary");
  return best;
}

}  // namespace

KakForm kak_decompose(const Mat4c& U) {
  if (!is_unitary(U, 1e-9)) throw ParameterError("kak_decompose needs a unitary");
  const Mat4c B = magic_basis();
  const Mat4c Ub = B.adjoint() * U * B;
  const Mat4c M = Ub.transpose() * Ub;

  Eigen::Matrix4d P = simultaneous_diagonalizer(M);
  if (P.determinant() < 0.0) P.col(0) *= -1.0;
  const Eigen::Vector4cd d = (P.transpose().cast<Complex>() * M * P.cast<Complex>()).diagonal();

  Eigen::Vector4cd s;
  for (int k = 0; k < 4; ++k) s(k) = std::sqrt(d(k));
  Mat4c K1 = Ub * P.cast<Complex>() * s.cwiseInverse().asDiagonal();
  if (K1.real().determinant() < 0.0) {
    s(0) = -s(0);
    K1.col(0) *= -1.0;
  }

  // s_k = e^{i phi} e^{-i alpha . charge_k}: four linear equations in (phi, alpha).
  Eigen::Matrix4d sys;
  Eigen::Vector4d rhs;
  const std::array<std::array<double, 3>, 4> charges{{
      {1.0, -1.0, 1.0}, {-1.0, 1.0, 1.0}, {1.0, 1.0, -1.0}, {-1.0, -1.0, -1.0}}};
  for (int k = 0; k < 4; ++k) {
    sys(k, 0) = 1.0;
    for (int i = 0; i < 3; ++i) sys(k, i + 1) = -charges[k][i];
    rhs(k) = std::arg(s(k));
  }
  const Eigen::Vector4d sol = sys.fullPivLu().solve(rhs);

  KakForm out;
  out.phase = std::polar(1.0, sol(0));
  out.core.alpha = sol.tail<3>();
  const Mat4c left = B * K1.real().cast<Complex>() * B.adjoint();
  const Mat4c right = B * P.transpose().cast<Complex>() * B.adjoint();
  std::tie(out.L1, out.L2) = split_product(left);
  std::tie(out.R1, out.R2) = split_product(right);
  return out;
}

}  // namespace ugen
