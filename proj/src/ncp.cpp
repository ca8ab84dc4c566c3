#include "ugen/ncp.hpp"

#include <cmath>
#include <numbers>

namespace ugen {

namespace {

Eigen::Vector4cd vec(const Mat2c& m) {
  return Eigen::Vector4cd(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
}

Mat2c unit_operator(int k, int l) {
  Mat2c E = Mat2c::Zero();
  E(k, l) = 1.0;
  return E;
}

TwoQubitState lambda_product(const QubitState& tau) {
  return TwoQubitState::product(tau.bloch(), Vec3::Zero());
}

}  // namespace

Mat4c lambda_operator(double p, const Mat2c& X) {
  return kron(X, 0.5 * Mat2c::Identity()) + X.trace() * (1.0 - p) * (bell_phi_plus() - 0.25 * Mat4c::Identity());
}

TwoQubitState lambda_state(double p, const QubitState& tau) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("p must lie in [0, 1]");
  if (tau.bloch().norm() > p + kBlochTol) throw DomainError("|tau| exceeds p: outside the compatibility domain");
  const TwoQubitState s = decompose(lambda_operator(p, tau.density()));
  if (!is_valid(s).valid) throw InvalidState("correlated state is not positive semidefinite");
  return s;
}

Mat4c evolution_unitary(double t) {
  const Complex i(0.0, 1.0);
  return std::cos(t) * Mat4c::Identity() - i * std::sin(t) * cnot();
}

Mat4c evolve_time(double t, const Mat4c& rho) { return conjugate(rho, evolution_unitary(t)); }

Mat4c dynamical_matrix(double p, double t) {
  const Complex i(0.0, 1.0);
  const Complex a = (1.0 - std::exp(-2.0 * i * t)) * (1.0 - p) / 4.0;
  Mat4c A = Mat4c::Zero();
  A(0, 0) = 1.0;
  A(1, 0) = a;
  A(1, 1) = std::exp(-i * t) * std::cos(t);
  A(1, 3) = a;
  A(2, 0) = std::conj(a);
  A(2, 2) = std::exp(i * t) * std::cos(t);
  A(2, 3) = std::conj(a);
  A(3, 3) = 1.0;
  return A;
}

Mat4c dynamical_matrix_numeric(double p, double t) {
  const Mat4c U = evolution_unitary(t);
  Mat4c A;
  for (int k = 0; k < 2; ++k) {
    for (int l = 0; l < 2; ++l) A.col(2 * k + l) = vec(reduced_output(U, lambda_operator(p, unit_operator(k, l))));
  }
  return A;
}

Mat4c realign(const Mat4c& A) {
  Mat4c B;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) B(2 * i + j, 2 * k + l) = A(2 * i + k, 2 * j + l);
  return B;
}

Eigen::Vector4d realigned_spectrum(const Mat4c& A) {
  const Mat4c B = realign(A);
  const Mat4c H = 0.5 * (B + B.adjoint());
  return Eigen::SelfAdjointEigenSolver<Mat4c>(H, Eigen::EigenvaluesOnly).eigenvalues();
}

double min_negative_eigenvalue_closed_form(double t) {
  const double s = std::sin(t / 2.0);
  return s * (s - 0.5 * std::sqrt(1.0 + 3.0 * s * s));
}

double min_eigenvalue_general_p(double p, double t) {
  const double s = std::sin(t / 2.0);
  const double c = std::cos(t / 2.0);
  return s * (s - std::sqrt(s * s + (1.0 - p) * (1.0 - p) * c * c));
}

Mat4c mitigated_dynamical_matrix(double p, double t) {
  const Mat4c U = evolution_unitary(t);
  const Mat2c R = local_rotation_unitary(LocalRotation(Vec3::UnitY(), std::numbers::pi / 2.0));
  Mat4c A;
  for (int k = 0; k < 2; ++k) {
    for (int l = 0; l < 2; ++l) {
      const Mat2c E = unit_operator(k, l);
      const Mat4c rho = conjugate_system(lambda_operator(p, R.adjoint() * E * R), R);
      A.col(2 * k + l) = vec(reduced_output(U, rho));
    }
  }
  return A;
}

EnvSolutionSet env_solution_all_inputs(double t, const std::vector<QubitState>& taus) {
  if (taus.empty()) throw ParameterError("at least one input state is required");
  const Mat4c U = evolution_unitary(t);
  const Eigen::Index n = static_cast<Eigen::Index>(taus.size());
  Eigen::MatrixXd A(3 * n, 3);
  Eigen::VectorXd c(3 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const MatchingSystem sys = matching_system(U, lambda_product(taus[static_cast<std::size_t>(k)]));
    A.block<3, 3>(3 * k, 0) = sys.A;
    c.segment<3>(3 * k) = sys.c;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const Eigen::Vector3d sv = svd.singularValues();
  const double floor = 1e-12 * std::max(1.0, sv(0));
  Vec3 proj = svd.matrixU().transpose() * c;
  EnvSolutionSet out;
  for (int i = 0; i < 3; ++i) {
    if (sv(i) > floor) {
      proj(i) /= sv(i);
    } else {
      proj(i) = 0.0;
      out.null_basis.push_back(svd.matrixV().col(i));
    }
  }
  out.min_norm = svd.matrixV() * proj;
  out.residual = (A * out.min_norm - c).norm();
  return out;
}

double env_residual_all_inputs(double t, const std::vector<QubitState>& taus, const Vec3& zeta) {
  const Mat4c U = evolution_unitary(t);
  double worst = 0.0;
  for (const auto& tau : taus) {
    const MatchingSystem sys = matching_system(U, lambda_product(tau));
    worst = std::max(worst, (sys.A * zeta - sys.c).norm());
  }
  return worst;
}

}  // namespace ugen
