#include <doctest.h>

#include <cmath>

#include "../support.hpp"
#include "ugen/analytic.hpp"
#include "ugen/channel.hpp"
#include "ugen/unitary.hpp"

using namespace ugen;
using namespace ugen::testing;

namespace {
KrausChannel amplitude_damping(double gamma) {
  Mat2c k1 = Mat2c::Zero(), k2 = Mat2c::Zero();
  k1(0, 0) = 1.0;
  k1(1, 1) = std::sqrt(1.0 - gamma);
  k2(0, 1) = std::sqrt(gamma);
  return KrausChannel({k1, k2});
}
}  // namespace

TEST_SUITE("channel") {
  TEST_CASE("probabilistic unitary channel") {
    std::mt19937_64 g(18);
    const Mat2c V = haar2(g);
    const Mat2c r = random_density2(g);
    const KrausChannel one = probabilistic_unitary_channel({1.0}, {V});
    CHECK(one.size() == 1);
    CHECK(max_abs(one.apply(r) - V * r * V.adjoint()) < 1e-14);
    const KrausChannel none = probabilistic_unitary_channel({0.0, 0.0}, {V, haar2(g)});
    CHECK(max_abs(none.apply(r) - r) < 1e-14);
    const KrausChannel mix = probabilistic_unitary_channel({0.25, 0.5}, {V, haar2(g)});
    CHECK(mix.completeness_defect() < 1e-14);
    CHECK_THROWS_AS(probabilistic_unitary_channel({0.7, 0.6}, {V, V}), ParameterError);
  }

  TEST_CASE("system-side application") {
    std::mt19937_64 g(19);
    for (int k = 0; k < 50; ++k) {
      const Mat4c rho = random_density4(g);
      const KrausChannel ch = kraus_from_env(haar4(g), QubitState(random_bloch(g)));
      const Mat4c out = apply_channel_system_side(ch, rho);
      CHECK(std::abs(out.trace() - 1.0) < 1e-12);
      CHECK(is_valid(decompose(out)).valid);
      CHECK((decompose(out).b() - decompose(rho).b()).norm() < 1e-12);
      CHECK(max_abs(reconstruct(apply_channel_system_side(ch, decompose(rho))) - out) < 1e-12);
    }
  }

  TEST_CASE("unitary channel transforms Bloch data") {
    std::mt19937_64 g(20);
    const Mat2c L = haar2(g);
    const Mat3 O = su2_to_so3(L);
    const TwoQubitState s = random_state(g);
    const TwoQubitState t = apply_channel_system_side(KrausChannel({L}), s);
    CHECK((t.a() - O * s.a()).norm() < 1e-12);
    CHECK((t.b() - s.b()).norm() < 1e-12);
    CHECK((t.T() - O * s.T()).norm() < 1e-12);
  }

  TEST_CASE("trivial dilation") {
    const Dilation d = stinespring_dilate(KrausChannel({Mat2c::Identity(), Mat2c::Zero()}));
    CHECK(max_abs(d.W.adjoint() * d.W - Mat4c::Identity()) < 1e-14);
    CHECK(max_abs(d.kraus(0) - Mat2c::Identity()) < 1e-15);
  }

  TEST_CASE("amplitude damping dilation") {
    const KrausChannel ch = amplitude_damping(0.3);
    const Dilation d = stinespring_dilate(ch);
    CHECK(max_abs(d.W.adjoint() * d.W - Mat4c::Identity()) < 1e-12);
    CHECK(max_abs(d.kraus(0) - ch.operators()[0]) == 0.0);
    CHECK(max_abs(d.kraus(1) - ch.operators()[1]) == 0.0);
    std::mt19937_64 g(21);
    for (int k = 0; k < 200; ++k) {
      const Mat2c r = random_density2(g);
      CHECK(max_abs(apply_dilation(d, r) - ch.apply(r)) < 1e-12);
    }
  }

  TEST_CASE("full dilated experiment") {
    std::mt19937_64 g(22);
    for (int k = 0; k < 20; ++k) {
      const KrausChannel ch = kraus_from_env(haar4(g), QubitState(random_unit(g)));
      REQUIRE(ch.size() == 2);
      const Dilation d = stinespring_dilate(ch);
      const Mat4c U = haar4(g);
      const Mat4c rho = random_density4(g);
      const Mat2c ref = reduced_output(U, apply_channel_system_side(ch, rho));
      CHECK(max_abs(dilated_experiment(d, U, rho) - ref) < 1e-12);
    }
  }

  TEST_CASE("dilation requires two complete operators") {
    CHECK_THROWS(stinespring_dilate(KrausChannel({Mat2c::Identity()})));
    CHECK_THROWS(stinespring_dilate(KrausChannel({Mat2c::Identity(), Mat2c::Identity()})));
  }
}
