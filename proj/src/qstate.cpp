#include "ugen/qstate.hpp"

#include <cmath>
#include <string>

namespace ugen {

namespace {

void check_ball(const Vec3& v, const char* what) {
  if (!v.allFinite() || v.norm() > 1.0 + kBlochTol) {
    throw InvalidState(std::string(what) + " Bloch vector outside the unit ball (|v| = " +
                       std::to_string(v.norm()) + ")");
  }
}

std::array<Mat2c, 3> make_paulis() {
  const Complex i(0.0, 1.0);
  Mat2c x, y, z;
  x << 0, 1, 1, 0;
  y << 0, -i, i, 0;
  z << 1, 0, 0, -1;
  return {x, y, z};
}

}  // namespace

const std::array<Mat2c, 3>& pauli() {
  static const std::array<Mat2c, 3> p = make_paulis();
  return p;
}

Mat2c pauli(int i) { return pauli().at(static_cast<std::size_t>(i)); }

Mat4c kron(const Mat2c& lhs, const Mat2c& rhs) {
  Mat4c out;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      out.block<2, 2>(2 * r, 2 * c) = lhs(r, c) * rhs;
    }
  }
  return out;
}

QubitState::QubitState(const Vec3& bloch) : bloch_(bloch) { check_ball(bloch_, "qubit"); }

Mat2c QubitState::density() const { return qubit_density(bloch_); }

QubitState QubitState::from_density(const Mat2c& rho) {
  if (!is_hermitian(rho) || std::abs(rho.trace() - Complex(1.0)) > kPsdTol) {
    throw InvalidState("qubit operator is not Hermitian with unit trace");
  }
  return QubitState(bloch_vector(rho));
}

TwoQubitState::TwoQubitState(const Vec3& a, const Vec3& b, const Mat3& T) : a_(a), b_(b), T_(T) {
  check_ball(a_, "system");
  check_ball(b_, "environment");
  if (!T_.allFinite()) throw InvalidState("correlation matrix has non-finite entries");
}

TwoQubitState TwoQubitState::maximally_mixed() {
  return TwoQubitState(Vec3::Zero(), Vec3::Zero(), Mat3::Zero());
}

TwoQubitState TwoQubitState::product(const Vec3& a, const Vec3& b) {
  return TwoQubitState(a, b, a * b.transpose());
}

TwoQubitState decompose(const Mat4c& rho) {
  if (!is_hermitian(rho)) throw InvalidState("two-qubit operator is not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0)) > kPsdTol) {
    throw InvalidState("two-qubit operator does not have unit trace");
  }
  const auto& s = pauli();
  const Mat2c id = Mat2c::Identity();
  Vec3 a, b;
  Mat3 T;
  for (int i = 0; i < 3; ++i) {
    a(i) = (rho * kron(s[i], id)).trace().real();
    b(i) = (rho * kron(id, s[i])).trace().real();
    for (int j = 0; j < 3; ++j) T(i, j) = (rho * kron(s[i], s[j])).trace().real();
  }
  return TwoQubitState(a, b, T);
}

Mat4c reconstruct(const TwoQubitState& state) {
  const auto& s = pauli();
  const Mat2c id = Mat2c::Identity();
  Mat4c rho = Mat4c::Identity();
  for (int i = 0; i < 3; ++i) {
    rho += state.a()(i) * kron(s[i], id) + state.b()(i) * kron(id, s[i]);
    for (int j = 0; j < 3; ++j) rho += state.T()(i, j) * kron(s[i], s[j]);
  }
  return 0.25 * rho;
}

Mat2c partial_trace(const Mat4c& rho, Subsystem keep) {
  Mat2c out = Mat2c::Zero();
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      for (int k = 0; k < 2; ++k) {
        out(r, c) += keep == Subsystem::System ? rho(2 * r + k, 2 * c + k) : rho(2 * k + r, 2 * k + c);
      }
    }
  }
  return out;
}

double fidelity_qubit(const Mat2c& rho, const Mat2c& sigma) {
  const double overlap = (rho * sigma).trace().real();
  const double dets = rho.determinant().real() * sigma.determinant().real();
  // Determinants of valid states are >= 0; clip round-off below zero.
  return overlap + 2.0 * std::sqrt(std::max(0.0, dets));
}

Validity is_valid(const TwoQubitState& state) {
  Eigen::SelfAdjointEigenSolver<Mat4c> es(reconstruct(state), Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  return {lo >= -kPsdTol, lo};
}

Vec3 bloch_vector(const Mat2c& rho) {
  const auto& s = pauli();
  Vec3 v;
  for (int i = 0; i < 3; ++i) v(i) = (rho * s[i]).trace().real();
  return v;
}

Mat2c qubit_density(const Vec3& bloch) {
  const auto& s = pauli();
  Mat2c rho = Mat2c::Identity();
  for (int i = 0; i < 3; ++i) rho += bloch(i) * s[i];
  return 0.5 * rho;
}

bool is_hermitian(const Eigen::Ref<const Eigen::MatrixXcd>& m, double tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Eigen::Ref<const Eigen::MatrixXcd>& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  return (m.adjoint() * m - id).cwiseAbs().maxCoeff() <= tol;
}

Mat4c conjugate_system(const Mat4c& rho, const Mat2c& op) {
  const Mat4c k = kron(op, Mat2c::Identity());
  return k * rho * k.adjoint();
}

Mat4c conjugate(const Mat4c& rho, const Mat4c& op) { return op * rho * op.adjoint(); }

Mat4c bell_phi_plus() {
  Eigen::Vector4cd phi = Eigen::Vector4cd::Zero();
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  return phi * phi.adjoint();
}

}  // namespace ugen
