#include "ugen/matching.hpp"

#include <cmath>

namespace ugen {

namespace {

constexpr double kSingularFloor = 1e-12;
constexpr double kTraceMismatch = 1e-9;
constexpr double kKrausWeightFloor = 1e-15;

}  // namespace

const char* to_string(Feasibility f) {
  switch (f) {
    case Feasibility::Valid:
      return "valid";
    case Feasibility::Invalid:
      return "invalid";
    case Feasibility::Inconsistent:
      return "inconsistent";
  }
  return "inconsistent";
}

Mat2c reduced_output(const Mat4c& U, const Mat4c& rho) {
  return partial_trace(U * rho * U.adjoint(), Subsystem::System);
}

MatchingSystem matching_system(const Mat4c& U, const TwoQubitState& state) {
  const Mat4c rho = reconstruct(state);
  const Mat2c rho_s = partial_trace(rho, Subsystem::System);
  const Mat2c out = reduced_output(U, rho);
  const Mat2c base = reduced_output(U, kron(rho_s, 0.5 * Mat2c::Identity()));
  if (std::abs(out.trace() - base.trace()) > kTraceMismatch) {
    throw InternalError("matching system: trace component does not cancel");
  }
  MatchingSystem sys;
  sys.c = bloch_vector(out) - bloch_vector(base);
  for (int k = 0; k < 3; ++k) {
    sys.A.col(k) = bloch_vector(reduced_output(U, kron(rho_s, 0.5 * pauli(k))));
  }
  return sys;
}

MatchingSystem matching_system(const NonlocalParams& p, const Vec3& a, const Vec3& b, const Mat3& T) {
  const Vec3 r0 = matching_residuals(p, a, b, T, Vec3::Zero()).r;
  MatchingSystem sys;
  sys.c = r0;
  for (int k = 0; k < 3; ++k) sys.A.col(k) = r0 - matching_residuals(p, a, b, T, Vec3::Unit(k)).r;
  return sys;
}

MatchingSystem matching_system(const NonlocalParams& p, const TwoQubitState& state) {
  return matching_system(p, state.a(), state.b(), state.T());
}

EnvSolution solve_system(const MatchingSystem& sys, double tol) {
  Eigen::JacobiSVD<Mat3> svd(sys.A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec3 sv = svd.singularValues();
  Vec3 proj = svd.matrixU().transpose() * sys.c;
  for (int i = 0; i < 3; ++i) proj(i) = sv(i) > kSingularFloor ? proj(i) / sv(i) : 0.0;
  EnvSolution out;
  out.zeta = svd.matrixV() * proj;
  out.residual_norm = (sys.A * out.zeta - sys.c).norm();
  if (out.residual_norm > tol) {
    out.feasibility = Feasibility::Inconsistent;
  } else {
    out.feasibility = out.zeta.norm() <= 1.0 + kFeasibleNormSlack ? Feasibility::Valid : Feasibility::Invalid;
  }
  return out;
}

EnvSolution solve_env(const Mat4c& U, const TwoQubitState& state, double tol) {
  if (!is_unitary(U)) throw ParameterError("solve_env needs a unitary");
  return solve_system(matching_system(U, state), tol);
}

EnvSolution solve_env(const NonlocalParams& p, const TwoQubitState& state, double tol) {
  return solve_system(matching_system(p, state), tol);
}

EnvSolution check_env(const Mat4c& U, const TwoQubitState& state, const Vec3& zeta, double tol) {
  const MatchingSystem sys = matching_system(U, state);
  EnvSolution out;
  out.zeta = zeta;
  out.residual_norm = (sys.A * zeta - sys.c).norm();
  if (out.residual_norm > tol) {
    out.feasibility = Feasibility::Inconsistent;
  } else {
    out.feasibility = zeta.norm() <= 1.0 + kFeasibleNormSlack ? Feasibility::Valid : Feasibility::Invalid;
  }
  return out;
}

MatchingResiduals matching_residuals(const NonlocalParams& p, const Vec3& a, const Vec3& b, const Mat3& T,
                                     const Vec3& z) {
  const double s1 = std::sin(2.0 * p.alpha(0)), s2 = std::sin(2.0 * p.alpha(1)), s3 = std::sin(2.0 * p.alpha(2));
  const double c1 = std::cos(2.0 * p.alpha(0)), c2 = std::cos(2.0 * p.alpha(1)), c3 = std::cos(2.0 * p.alpha(2));
  auto t = [&T](int i, int j) { return T(i - 1, j - 1); };
  const double a1 = a(0), a2 = a(1), a3 = a(2);
  const double b1 = b(0), b2 = b(1), b3 = b(2);
  const double z1 = z(0), z2 = z(1), z3 = z(2);
  MatchingResiduals out;
  out.r(0) = (t(3, 2) - a3 * z2) * c3 * s2 + ((-t(2, 3) + a2 * z3) * c2 + (b1 - z1) * s2) * s3;
  out.r(1) = (-t(3, 1) + a3 * z1) * c3 * s1 + ((t(1, 3) - a1 * z3) * c1 + (b2 - z2) * s1) * s3;
  out.r(2) = (t(2, 1) - a2 * z1) * c2 * s1 + ((-t(1, 2) + a1 * z2) * c1 + (b3 - z3) * s1) * s2;
  return out;
}

KrausChannel kraus_from_env(const Mat4c& U, const QubitState& zeta) {
  if (!is_unitary(U)) throw ParameterError("kraus_from_env needs a unitary");
  Eigen::SelfAdjointEigenSolver<Mat2c> es(zeta.density());
  std::vector<Mat2c> ops;
  for (int j = 1; j >= 0; --j) {
    const double w = es.eigenvalues()(j);
    if (w <= kKrausWeightFloor) continue;
    const Eigen::Vector2cd v = es.eigenvectors().col(j);
    for (int eta = 0; eta < 2; ++eta) {
      // <eta|_E U |v>_E as an operator on the system.
      Mat2c K;
      for (int s = 0; s < 2; ++s) {
        for (int sp = 0; sp < 2; ++sp) K(s, sp) = U(2 * s + eta, 2 * sp) * v(0) + U(2 * s + eta, 2 * sp + 1) * v(1);
      }
      ops.push_back(std::sqrt(w) * K);
    }
  }
  return KrausChannel(std::move(ops));
}

}  // namespace ugen
