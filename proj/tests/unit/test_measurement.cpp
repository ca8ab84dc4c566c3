#include <doctest.h>

#include <cmath>

#include "../support.hpp"
#include "ugen/measurement.hpp"

using namespace ugen;
using namespace ugen::testing;

TEST_SUITE("measurement") {
  TEST_CASE("projective limit along z") {
    const MeasurementOperators m = build_operators(WeakMeasurement(1.0, Vec3::UnitZ()));
    Mat2c p0 = Mat2c::Zero(), p1 = Mat2c::Zero();
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    CHECK(max_abs(m.plus - p0) < 1e-15);
    CHECK(max_abs(m.minus - p1) < 1e-15);
  }

  TEST_CASE("zero strength is I/sqrt2") {
    const MeasurementOperators m = build_operators(WeakMeasurement(0.0, Vec3::UnitX()));
    CHECK(max_abs(m.plus - Mat2c::Identity() / std::sqrt(2.0)) < 1e-15);
    CHECK(max_abs(m.minus - Mat2c::Identity() / std::sqrt(2.0)) < 1e-15);
  }

  TEST_CASE("operators are complete for any strength") {
    std::mt19937_64 g(5);
    for (double e : {0.0, 0.2, 0.7, 2.0 * std::sqrt(2.0) / 3.0, 1.0}) {
      const MeasurementOperators m = build_operators(WeakMeasurement(e, random_unit(g)));
      CHECK(max_abs(m.plus * m.plus + m.minus * m.minus - Mat2c::Identity()) < 1e-14);
      const WeakMeasurement w(e, Vec3::UnitY());
      CHECK(w.coeff_plus() == doctest::Approx(std::sqrt((1 + e) / 2) + std::sqrt((1 - e) / 2)));
      CHECK(w.coeff_minus() == doctest::Approx(std::sqrt((1 + e) / 2) - std::sqrt((1 - e) / 2)));
    }
  }

  TEST_CASE("parameter checks") {
    CHECK_THROWS_AS(WeakMeasurement(1.1, Vec3::UnitZ()), ParameterError);
    CHECK_THROWS_AS(WeakMeasurement(-0.1, Vec3::UnitZ()), ParameterError);
    CHECK_THROWS_AS(WeakMeasurement(0.5, Vec3(1, 1, 0)), ParameterError);
  }

  TEST_CASE("closed form matches matrix computation") {
    std::mt19937_64 g(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
      const Mat4c rho = random_density4(g);
      const WeakMeasurement w(u(g), random_unit(g));
      const MeasurementOperators ops = build_operators(w);
      for (Outcome o : {Outcome::Plus, Outcome::Minus}) {
        const Mat2c M = o == Outcome::Plus ? ops.plus : ops.minus;
        const Mat4c post = conjugate_system(rho, M);
        const double prob = post.trace().real();
        const MeasurementOutcome out = apply_closed_form(decompose(rho), w, o);
        CHECK(out.probability == doctest::Approx(prob).epsilon(1e-12));
        CHECK(max_abs(reconstruct(out.post_state) - post / prob) < 1e-12);
      }
    }
  }

  TEST_CASE("degenerate outcome") {
    const TwoQubitState s = TwoQubitState::product(Vec3::UnitZ(), Vec3::Zero());
    CHECK_THROWS_AS(apply_closed_form(s, WeakMeasurement(1.0, Vec3::UnitZ()), Outcome::Minus), DegenerateOutcome);
  }

  TEST_CASE("measurement fidelity") {
    std::mt19937_64 g(7);
    CHECK(measurement_fidelity(random_bloch(g), WeakMeasurement(0.0, random_unit(g)), Outcome::Plus) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(measurement_fidelity(Vec3::Zero(), WeakMeasurement(1.0, Vec3::UnitX()), Outcome::Plus) ==
          doctest::Approx(0.5).epsilon(1e-14));
    const Vec3 n = random_unit(g);
    for (double e : {0.1, 0.5, 0.9}) {
      CHECK(measurement_fidelity(n, WeakMeasurement(e, n), Outcome::Plus) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("power coefficients") {
    const WeakMeasurement w(0.4, Vec3::UnitZ());
    const auto [p1, m1] = power_coefficients(0.4, 1);
    CHECK(p1 == doctest::Approx(w.coeff_plus()));
    CHECK(m1 == doctest::Approx(w.coeff_minus()));
    for (int k = 1; k <= 5; ++k) {
      const auto [p, m] = power_coefficients(1.0, k);
      CHECK(p == doctest::Approx(1.0));
      CHECK(m == doctest::Approx(1.0));
    }
    // M_+^k from the matrix power.
    const MeasurementOperators ops = build_operators(WeakMeasurement(0.6, Vec3::UnitX()));
    const Mat2c m3 = ops.plus * ops.plus * ops.plus;
    const auto [p3, q3] = power_coefficients(0.6, 3);
    CHECK(max_abs(m3 - 0.5 * (p3 * Mat2c::Identity() + q3 * pauli(0))) < 1e-14);
  }

  TEST_CASE("single-shot equivalents") {
    CHECK(single_shot_equivalent(1.0, 3).value() == 1.0);
    CHECK(single_shot_equivalent(0.0, 5).value() == 0.0);
    CHECK_FALSE(single_shot_equivalent(0.6, 2).has_value());
    const double h = repeated_measurement_h(0.6, 2);
    CHECK(h > 2.0);
    CHECK(h < 4.0);
  }
}
