#include "ugen/analytic.hpp"

#include <cmath>
#include <numbers>
#include <thread>

#include "ugen/min_epsilon.hpp"

namespace ugen {

namespace {

Mat3 cross_matrix(const Vec3& v) {
  Mat3 K;
  K << 0.0, -v(2), v(1), v(2), 0.0, -v(0), -v(1), v(0), 0.0;
  return K;
}

/// Proper rotation whose row k equals the unit vector u.
Mat3 rotation_with_row(int k, const Vec3& u) {
  Vec3 helper = Vec3::Unit(0);
  Eigen::Index smallest = 0;
  u.cwiseAbs().minCoeff(&smallest);
  helper = Vec3::Unit(smallest);
  const Vec3 v = (helper - helper.dot(u) * u).normalized();
  const Vec3 w = u.cross(v);
  Mat3 O;
  const int i = (k + 1) % 3, j = (k + 2) % 3;
  O.row(k) = u.transpose();
  O.row(i) = v.transpose();
  O.row(j) = w.transpose();
  if (O.determinant() < 0.0) O.row(j) *= -1.0;
  return O;
}

/// Proper rotation sending unit vector u to e_i.
Mat3 rotation_to_axis(const Vec3& u, int i) {
  const Vec3 e = Vec3::Unit(i);
  const Vec3 axis = u.cross(e);
  const double s = axis.norm(), c = u.dot(e);
  if (s < 1e-15) {
    if (c > 0.0) return Mat3::Identity();
    // Antiparallel: half turn about any axis orthogonal to e_i.
    const Vec3 n = Vec3::Unit((i + 1) % 3);
    return 2.0 * n * n.transpose() - Mat3::Identity();
  }
  const Mat3 K = cross_matrix(axis / s);
  return Mat3::Identity() + s * K + (1.0 - c) * K * K;
}

Theorem1Certificate finish_certificate(const Mat4c& U, const TwoQubitState& state, const Mat2c& V,
                                       const Vec3& zeta, double tol) {
  Theorem1Certificate cert;
  cert.V = V;
  cert.zeta = zeta;
  const TwoQubitState moved = decompose(conjugate_system(reconstruct(state), V));
  cert.check = check_env(U, moved, zeta, tol);
  cert.residual = cert.check.residual_norm;
  const Mat2c rho_s = qubit_density(state.a());
  cert.fidelity = fidelity_qubit(rho_s, V * rho_s * V.adjoint());
  return cert;
}

/// Givens construction on Omega(p) directly. Returns the system rotation O and zeta.
std::pair<Mat3, Vec3> givens_solution(const NonlocalParams& p, const TwoQubitState& s) {
  bool in_s[3];
  int count = 0;
  for (int i = 0; i < 3; ++i) {
    in_s[i] = in_special_set(p.alpha(i));
    count += in_s[i] ? 1 : 0;
  }
  if (count == 0) throw FamilyMismatch("no nonlocal angle lies in S = {n pi/2}");
  const Mat3& T = s.T();
  const Vec3& b = s.b();

  if (count == 3) return {Mat3::Identity(), b};

  if (count == 2) {
    int i = 0;
    while (in_s[i]) ++i;
    const Vec3 col = T.col(i);
    const Mat3 O = col.norm() < 1e-15 ? Mat3::Identity() : rotation_to_axis(col.normalized(), i);
    Vec3 zeta = b;
    zeta(i) = 0.0;
    return {O, zeta};
  }

  int k = 0;
  while (!in_s[k]) ++k;
  const int i = (k + 1) % 3, j = (k + 2) % 3;
  // Row k orthogonal to columns i and j of T zeroes t_ki and t_kj.
  Vec3 u = T.col(i).cross(T.col(j));
  if (u.norm() < 1e-12) {
    const Vec3 span = T.col(i).norm() >= T.col(j).norm() ? Vec3(T.col(i)) : Vec3(T.col(j));
    if (span.norm() < 1e-12) {
      u = Vec3::Unit(k);
    } else {
      Eigen::Index m = 0;
      span.cwiseAbs().minCoeff(&m);
      u = span.cross(Vec3::Unit(m));
    }
  }
  const Mat3 O1 = rotation_with_row(k, u.normalized());
  Vec3 zeta = Vec3::Zero();
  zeta(k) = b(k);
  // Remaining condition on a rotation by z in the (i, j) plane; it is of the form
  // P cos z + Q sin z.
  auto f = [&](double z) {
    const Mat3 O = givens(i, j, z) * O1;
    return matching_residuals(p, O * s.a(), b, O * T, zeta).r(k);
  };
  const double z = std::atan2(-f(0.0), f(std::numbers::pi / 2.0));
  return {givens(i, j, z) * O1, zeta};
}

}  // namespace

// ---- Werner ---------------------------------------------------------------

TwoQubitState werner_state(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ParameterError("Werner weight must lie in [0, 1]");
  return TwoQubitState(Vec3::Zero(), Vec3::Zero(), -lambda * Mat3::Identity());
}

double werner_branch_point() { return std::sqrt(3.0) / 2.0; }

double werner_epsilon_branch1(double lambda) { return lambda; }

double werner_epsilon_branch2(double lambda) {
  const double q = 4.0 * lambda * lambda;
  return 2.0 * lambda * std::sqrt(q - 2.0) / (q - 1.0);
}

WernerSolution werner_epsilon_min(double lambda) {
  const TwoQubitState w = werner_state(lambda);
  WernerSolution out;
  out.lambda = lambda;
  if (lambda <= werner_branch_point()) {
    out.epsilon_min = werner_epsilon_branch1(lambda);
    out.axis = Vec3::UnitX();
  } else {
    out.epsilon_min = werner_epsilon_branch2(lambda);
    const double nx = -1.0 / std::sqrt(4.0 * lambda * lambda - 2.0);
    out.axis = Vec3(nx, 0.0, std::sqrt(1.0 - nx * nx));
  }
  const auto sol = measured_solution(cnot(), w, out.epsilon_min, out.axis, kDefaultMatchTol);
  if (!sol) throw InternalError("Werner optimum has a degenerate outcome");
  out.zeta = sol->zeta;
  out.fidelity = measurement_fidelity(Vec3::Zero(), WeakMeasurement(out.epsilon_min, out.axis), Outcome::Plus);
  return out;
}

double werner_zeta_x(double lambda, double epsilon, double n_x) {
  if (n_x == 0.0) throw DomainError("werner_zeta_x is singular at n_x = 0");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw DomainError("werner_zeta_x needs 0 < eps <= 1");
  const double r = std::sqrt(1.0 - epsilon * epsilon);
  return -(r / n_x + (1.0 - r) * n_x) * lambda / epsilon;
}

std::vector<FidelityPoint> werner_fidelity_curve(const std::vector<double>& lambdas) {
  std::vector<FidelityPoint> out;
  out.reserve(lambdas.size());
  for (double l : lambdas) out.push_back({l, werner_epsilon_min(l).fidelity});
  return out;
}

// ---- Bell / CNOT ----------------------------------------------------------

BellCnotOptimum bell_cnot_optimum() {
  const double h = 1.0 / std::sqrt(2.0);
  WeakMeasurement m(2.0 * std::sqrt(2.0) / 3.0, Vec3(h, 0.0, -h));
  const TwoQubitState phi = decompose(bell_phi_plus());
  const auto sol = measured_solution(cnot(), phi, m.epsilon(), m.axis(), kDefaultMatchTol);
  if (!sol) throw InternalError("Bell/CNOT optimum has a degenerate outcome");
  return {m, sol->zeta, *sol};
}

// ---- SWAP o CNOT ----------------------------------------------------------

Mat4c swap_cnot() { return swap_gate() * cnot(); }

Vec3 swapcnot_zeta(double epsilon, const Vec3& n) {
  if (std::abs(n(2)) < 1e-15) throw AxisDegenerate("displayed zeta is singular for n_z = 0");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ParameterError("strength must lie in (0, 1]");
  const double r = std::sqrt(1.0 - epsilon * epsilon);
  const double nz2 = n(2) * n(2);
  return Vec3(epsilon * n(0), n(1) * (r - 1.0) / epsilon, (nz2 + (1.0 - nz2) * r) / (epsilon * n(2)));
}

ProjectiveSolution swapcnot_projective_solution(const Vec3& axis) {
  if (std::abs(axis.norm() - 1.0) > 1e-12) throw ParameterError("axis must be a unit vector");
  if (std::abs(axis(2)) < 1e-15) throw AxisDegenerate("projective solution needs n_z != 0");
  const Vec3 zeta(axis(0), -axis(1), axis(2));
  const TwoQubitState phi = decompose(bell_phi_plus());
  const MeasurementOutcome m = apply_closed_form(phi, WeakMeasurement(1.0, axis), Outcome::Plus);
  return {1.0, zeta, check_env(swap_cnot(), m.post_state, zeta)};
}

TwoQubitState rotated_bell_state(double theta) {
  const Mat2c R = local_rotation_unitary(LocalRotation(Vec3::UnitY(), theta));
  return decompose(conjugate_system(bell_phi_plus(), R));
}

std::vector<SweepPoint> swapcnot_ry_sweep(const std::vector<double>& thetas, int workers) {
  std::vector<SweepPoint> out(thetas.size());
  const Mat4c U = swap_cnot();
  auto run = [&](std::size_t k) {
    const MinEpsilonResult r = minimize_epsilon(U, rotated_bell_state(thetas[k]));
    out[k] = {thetas[k], r.found ? r.epsilon : 1.0, r.axis};
  };
  const std::size_t nw = static_cast<std::size_t>(std::max(1, workers));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < nw; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t k = w; k < thetas.size(); k += nw) run(k);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

// ---- Theorems ---------------------------------------------------------------

TwoQubitState rotate_state(const TwoQubitState& s, const Mat3& O1, const Mat3& O2) {
  return TwoQubitState(O1 * s.a(), O2 * s.b(), O1 * s.T() * O2.transpose());
}

Theorem1Certificate theorem1_construct(const NonlocalParams& p, const TwoQubitState& state, double tol) {
  const auto [O, zeta] = givens_solution(p, state);
  return finish_certificate(nonlocal_unitary(p), state, inducing_unitary(O), zeta, tol);
}

Theorem1Certificate theorem1_construct(const Mat4c& U, const TwoQubitState& state, double tol) {
  const KakForm kak = kak_decompose(U);
  const Mat3 O1 = su2_to_so3(kak.R1), O2 = su2_to_so3(kak.R2);
  const auto [O, zeta_core] = givens_solution(kak.core, rotate_state(state, O1, O2));
  const Mat2c V = kak.R1.adjoint() * inducing_unitary(O) * kak.R1;
  return finish_certificate(U, state, V, O2.transpose() * zeta_core, tol);
}

double diagonal_zeta_norm2(const NonlocalParams& p, const Vec3& a, const Vec3& b) {
  Vec3 v;
  for (int i = 0; i < 3; ++i) v(i) = a(i) / std::tan(2.0 * p.alpha(i));
  return (b.squaredNorm() + std::pow(v.dot(b), 2)) / (1.0 + v.squaredNorm());
}

EnvSolution diagonal_solve(const NonlocalParams& p, const Vec3& a, const Vec3& b, const Vec3& t_diag, double tol) {
  Vec3 zeta = Vec3::Zero();
  int special = -1;
  for (int i = 0; i < 3 && special < 0; ++i) {
    if (in_special_set(p.alpha(i))) special = i;
  }
  if (special >= 0) {
    zeta(special) = b(special);
  } else {
    Vec3 v;
    for (int i = 0; i < 3; ++i) v(i) = a(i) / std::tan(2.0 * p.alpha(i));
    zeta = (b + v.dot(b) * v + v.cross(b)) / (1.0 + v.squaredNorm());
    if (zeta.squaredNorm() > b.squaredNorm() * (1.0 + 1e-12) + 1e-15) {
      throw InternalError("diagonal solution exceeds the environment norm bound");
    }
  }
  const Mat3 T = t_diag.asDiagonal();
  EnvSolution out;
  out.zeta = zeta;
  out.residual_norm = matching_residuals(p, a, b, T, zeta).r.norm();
  if (out.residual_norm > tol) {
    out.feasibility = Feasibility::Inconsistent;
  } else {
    out.feasibility = zeta.norm() <= 1.0 + kFeasibleNormSlack ? Feasibility::Valid : Feasibility::Invalid;
  }
  return out;
}

BothQubitSolution both_qubit_construct(const Mat4c& U, const TwoQubitState& state, double tol) {
  const KakForm kak = kak_decompose(U);
  Eigen::JacobiSVD<Mat3> svd(state.T(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 P = svd.matrixU(), Q = svd.matrixV();
  Vec3 sigma = svd.singularValues();
  if (P.determinant() < 0.0) {
    P.col(2) *= -1.0;
    sigma(2) *= -1.0;
  }
  if (Q.determinant() < 0.0) {
    Q.col(2) *= -1.0;
    sigma(2) *= -1.0;
  }
  const Mat2c W1 = inducing_unitary(P.transpose());
  const Mat2c W2 = inducing_unitary(Q.transpose());

  BothQubitSolution out;
  out.V1 = kak.R1.adjoint() * W1;
  out.V2 = kak.R2.adjoint() * W2;
  const EnvSolution core = diagonal_solve(kak.core, P.transpose() * state.a(), Q.transpose() * state.b(), sigma, tol);
  const Vec3 zeta = su2_to_so3(kak.R2).transpose() * core.zeta;
  const TwoQubitState moved = decompose(conjugate(reconstruct(state), kron(out.V1, out.V2)));
  out.solution = check_env(U, moved, zeta, tol);
  return out;
}

}  // namespace ugen
