#include <doctest.h>

#include <cmath>
#include <numbers>

#include "../support.hpp"
#include "ugen/analytic.hpp"
#include "ugen/min_epsilon.hpp"

using namespace ugen;
using namespace ugen::testing;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("analytic") {
  TEST_CASE("Werner closed form") {
    const WernerSolution half = werner_epsilon_min(0.5);
    CHECK(half.epsilon_min == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(half.zeta(0) == doctest::Approx(-1.0).epsilon(1e-9));
    const double bp = werner_branch_point();
    CHECK(bp == doctest::Approx(std::sqrt(3.0) / 2.0));
    CHECK(std::abs(werner_epsilon_branch1(bp) - bp) < 1e-15);
    CHECK(std::abs(werner_epsilon_branch2(bp) - bp) < 1e-12);
    CHECK(werner_epsilon_min(1.0).epsilon_min == doctest::Approx(2.0 * std::sqrt(2.0) / 3.0).epsilon(1e-14));
    for (double l : {0.2, 0.6, 0.9, 0.95, 1.0}) {
      const WernerSolution w = werner_epsilon_min(l);
      CHECK(w.zeta.norm() <= 1.0 + 1e-9);
      CHECK(solve_env(cnot(), apply_closed_form(werner_state(l), WeakMeasurement(w.epsilon_min, w.axis),
                                                Outcome::Plus).post_state)
                .valid());
    }
  }

  TEST_CASE("Werner zeta_x") {
    CHECK(werner_zeta_x(0.7, 0.8, 1.0) == doctest::Approx(-0.7 / 0.8));
    CHECK(werner_zeta_x(0.7, 1.0, 1.0) == doctest::Approx(-0.7));
  }

  TEST_CASE("Werner fidelity curve") {
    const auto c = werner_fidelity_curve({0.0, 0.5, 1.0});
    CHECK(c.front().fidelity == doctest::Approx(1.0));
    CHECK(c.back().fidelity == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(c[1].fidelity <= c[0].fidelity);
  }

  TEST_CASE("Werner numeric minimum agrees with the closed form") {
    for (double l : {0.3, 0.95}) {
      const MinEpsilonResult r = minimize_epsilon(cnot(), werner_state(l));
      REQUIRE(r.found);
      CHECK(r.epsilon == doctest::Approx(werner_epsilon_min(l).epsilon_min).epsilon(1e-6));
    }
  }

  TEST_CASE("Bell/CNOT optimum") {
    const BellCnotOptimum o = bell_cnot_optimum();
    CHECK(o.measurement.epsilon() == doctest::Approx(2.0 * std::sqrt(2.0) / 3.0));
    CHECK((o.zeta - Vec3::UnitX()).norm() < 1e-12);
    CHECK(o.check.valid());
    CHECK(o.check.residual_norm < 1e-12);
  }

  TEST_CASE("SWAP.CNOT projective example") {
    const ProjectiveSolution z = swapcnot_projective_solution(Vec3::UnitZ());
    CHECK((z.zeta - Vec3::UnitZ()).norm() < 1e-15);
    CHECK(z.check.valid());
    const Vec3 n(1 / std::sqrt(2.0), 0, 1 / std::sqrt(2.0));
    const ProjectiveSolution s = swapcnot_projective_solution(n);
    CHECK((s.zeta - n).norm() < 1e-15);
    CHECK((s.check.zeta - n).norm() < 1e-9);
    CHECK_THROWS_AS(swapcnot_zeta(0.5, Vec3::UnitX()), AxisDegenerate);
    // Closed form agrees with the solver away from the projective limit.
    const TwoQubitState bell = decompose(bell_phi_plus());
    const Vec3 m = Vec3(0.3, -0.4, 0.5).normalized();
    const EnvSolution sol =
        solve_env(swap_cnot(), apply_closed_form(bell, WeakMeasurement(0.7, m), Outcome::Plus).post_state);
    CHECK((sol.zeta - swapcnot_zeta(0.7, m)).norm() < 1e-12);
    CHECK(swapcnot_zeta(0.7, m).norm() > 1.0);
  }

  TEST_CASE("SWAP.CNOT rotated Bell endpoints") {
    const auto pts = swapcnot_ry_sweep({0.0, kPi / 2});
    CHECK(pts[0].epsilon_min == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(pts[1].epsilon_min == doctest::Approx(0.0));
  }

  TEST_CASE("Givens construction on Werner and CNOT") {
    const Theorem1Certificate c = theorem1_construct(cnot(), werner_state(0.8));
    CHECK(c.check.valid());
    const Mat2c expect = local_rotation_unitary(LocalRotation(Vec3::UnitY(), kPi / 2));
    const Complex ph = (expect.adjoint() * c.V).trace() / 2.0;
    CHECK(std::abs(ph) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(max_abs(c.V - ph * expect) < 1e-12);
  }

  TEST_CASE("Givens construction on random two-parameter gates") {
    std::mt19937_64 g(23);
    std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
    for (int k = 0; k < 50; ++k) {
      NonlocalParams p;
      p.alpha = Vec3(u(g), u(g), u(g));
      p.alpha(k % 3) = (k % 4) * kPi / 2;
      const Theorem1Certificate c = theorem1_construct(p, random_state(g));
      CHECK(c.residual <= 1e-9);
      CHECK(c.check.valid());
    }
    NonlocalParams three;
    three.alpha = Vec3(0.3, 0.5, 0.7);
    CHECK_THROWS_AS(theorem1_construct(three, random_state(g)), FamilyMismatch);
  }

  TEST_CASE("product states need no operation") {
    NonlocalParams p;
    p.alpha = Vec3(0.0, 0.4, 0.9);
    const TwoQubitState s = TwoQubitState::product(Vec3(0.1, 0.2, 0.3), Vec3(0.3, 0.0, -0.2));
    CHECK(solve_env(p, s).valid());
    CHECK(theorem1_construct(p, s).check.valid());
  }

  TEST_CASE("diagonal correlations") {
    NonlocalParams p;
    p.alpha = Vec3(0.3, 0.7, 1.2);
    CHECK(diagonal_solve(p, Vec3(0.1, 0.2, 0.3), Vec3::Zero(), Vec3(0.1, 0.1, 0.1)).zeta.norm() < 1e-15);
    p.alpha(0) = kPi;
    const Vec3 b(0.4, 0.3, -0.2);
    CHECK((diagonal_solve(p, Vec3(0.1, 0.2, 0.3), b, Vec3(0.2, -0.1, 0.1)).zeta - Vec3(b(0), 0, 0)).norm() < 1e-15);
    std::mt19937_64 g(24);
    std::uniform_real_distribution<double> u(0.0, 2.0 * kPi), v(-1.0, 1.0);
    int n = 0;
    while (n < 50) {
      NonlocalParams q;
      q.alpha = Vec3(u(g), u(g), u(g));
      const Vec3 a = random_bloch(g), bb = random_bloch(g), t(v(g), v(g), v(g));
      const TwoQubitState s(a, bb, t.asDiagonal());
      if (!is_valid(s).valid) continue;
      ++n;
      const EnvSolution d = diagonal_solve(q, a, bb, t);
      const EnvSolution ref = solve_env(q, s);
      CHECK((d.zeta - ref.zeta).norm() < 1e-9);
      CHECK(d.zeta.squaredNorm() == doctest::Approx(diagonal_zeta_norm2(q, a, bb)).epsilon(1e-10));
      CHECK(d.valid());
    }
  }

  TEST_CASE("two-sided construction") {
    const BothQubitSolution prod =
        both_qubit_construct(cnot(), TwoQubitState::product(Vec3(0.1, 0.2, 0.3), Vec3(0.3, 0.0, -0.2)));
    CHECK(prod.solution.valid());
    const BothQubitSolution sc = both_qubit_construct(swap_cnot(), decompose(bell_phi_plus()));
    CHECK(sc.solution.valid());
    CHECK(sc.solution.residual_norm <= 1e-9);
    std::mt19937_64 g(25);
    for (int k = 0; k < 30; ++k) {
      const BothQubitSolution s = both_qubit_construct(haar4(g), random_state(g));
      CHECK(s.solution.valid());
      CHECK(is_unitary(s.V1));
      CHECK(is_unitary(s.V2));
    }
  }

  TEST_CASE("rotate_state matches conjugation") {
    std::mt19937_64 g(26);
    const Mat2c L1 = haar2(g), L2 = haar2(g);
    const Mat4c rho = random_density4(g);
    const TwoQubitState r = rotate_state(decompose(rho), su2_to_so3(L1), su2_to_so3(L2));
    CHECK(max_abs(reconstruct(r) - conjugate(rho, kron(L1, L2))) < 1e-12);
  }
}
