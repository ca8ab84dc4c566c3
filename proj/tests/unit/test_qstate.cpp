#include <doctest.h>

#include <cmath>

#include "../support.hpp"
#include "ugen/analytic.hpp"
#include "ugen/qstate.hpp"

using namespace ugen;
using namespace ugen::testing;

TEST_SUITE("qstate") {
  TEST_CASE("Bell state decomposes to T = diag(1, -1, 1)") {
    const TwoQubitState s = decompose(bell_phi_plus());
    CHECK(s.a().norm() < 1e-15);
    CHECK(s.b().norm() < 1e-15);
    CHECK((s.T() - Vec3(1, -1, 1).asDiagonal().toDenseMatrix()).norm() < 1e-15);
  }

  TEST_CASE("maximally mixed state has no Bloch data") {
    const TwoQubitState s = decompose(Mat4c::Identity() / 4.0);
    CHECK(s.a().norm() == 0.0);
    CHECK(s.T().norm() == 0.0);
    CHECK(max_abs(reconstruct(TwoQubitState::maximally_mixed()) - Mat4c::Identity() / 4.0) < 1e-16);
  }

  TEST_CASE("Werner state has T = -lambda I") {
    for (double l : {0.0, 0.3, 1.0}) {
      Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
      psi(1) = 1.0 / std::sqrt(2.0);
      psi(2) = -1.0 / std::sqrt(2.0);
      const Mat4c w = l * psi * psi.adjoint() + (1.0 - l) * Mat4c::Identity() / 4.0;
      const TwoQubitState s = decompose(w);
      CHECK((s.T() + l * Mat3::Identity()).norm() < 1e-15);
      CHECK(max_abs(reconstruct(werner_state(l)) - w) < 1e-15);
    }
  }

  TEST_CASE("reconstruct inverts decompose") {
    std::mt19937_64 g(1);
    for (int k = 0; k < 100; ++k) {
      const Mat4c rho = random_density4(g);
      CHECK(max_abs(reconstruct(decompose(rho)) - rho) < 1e-14);
    }
    CHECK(max_abs(reconstruct(TwoQubitState(Vec3::Zero(), Vec3::Zero(), Vec3(1, -1, 1).asDiagonal())) -
                  bell_phi_plus()) < 1e-15);
  }

  TEST_CASE("partial traces") {
    CHECK(max_abs(partial_trace(bell_phi_plus(), Subsystem::System) - Mat2c::Identity() / 2.0) < 1e-15);
    std::mt19937_64 g(2);
    const Mat2c r = random_density2(g), z = random_density2(g);
    CHECK(max_abs(partial_trace(kron(r, z), Subsystem::System) - r) < 1e-15);
    CHECK(max_abs(partial_trace(kron(r, z), Subsystem::Environment) - z) < 1e-15);
  }

  TEST_CASE("validity") {
    CHECK(is_valid(werner_state(1.0)).valid);
    const Validity v = is_valid(TwoQubitState(Vec3::Zero(), Vec3::Zero(), Mat3::Identity()));
    CHECK_FALSE(v.valid);
    CHECK(v.min_eigenvalue == doctest::Approx(-0.5).epsilon(1e-12));
  }

  TEST_CASE("Bloch vectors outside the ball are rejected") {
    CHECK_THROWS_AS(QubitState(Vec3(1.0, 0.1, 0.0)), InvalidState);
    CHECK_THROWS_AS(TwoQubitState(Vec3(2, 0, 0), Vec3::Zero(), Mat3::Zero()), InvalidState);
    Mat2c bad = Mat2c::Identity();
    CHECK_THROWS_AS(QubitState::from_density(bad), InvalidState);
  }

  TEST_CASE("qubit fidelity") {
    std::mt19937_64 g(3);
    const Mat2c r = random_density2(g);
    CHECK(fidelity_qubit(r, r) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fidelity_qubit(qubit_density(Vec3::UnitZ()), qubit_density(-Vec3::UnitZ())) ==
          doctest::Approx(0.0).epsilon(1e-14));
    CHECK(fidelity_qubit(Mat2c::Identity() / 2.0, qubit_density(Vec3::UnitX())) == doctest::Approx(0.5));
  }

  TEST_CASE("Bloch vector roundtrip") {
    std::mt19937_64 g(4);
    for (int k = 0; k < 20; ++k) {
      const Vec3 v = random_bloch(g);
      CHECK((bloch_vector(qubit_density(v)) - v).norm() < 1e-15);
    }
  }
}
