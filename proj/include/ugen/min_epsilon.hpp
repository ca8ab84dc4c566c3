#pragma once

// Smallest weak-measurement strength (post-selected on the + outcome) after
// which a state becomes U-generated by a product state.

#include <optional>

#include "ugen/matching.hpp"
#include "ugen/measurement.hpp"

namespace ugen {

struct MinEpsilonOptions {
  double grid_step = 0.01;
  int polar_points = 17;    // includes both poles and the equator
  int azimuth_points = 32;
  double bisect_tol = 1e-13;
  double axis_tol = 1e-10;  // final compass step in (theta, phi)
  double match_tol = kDefaultMatchTol;
};

struct MinEpsilonResult {
  bool found = false;
  double epsilon = 1.0;
  Vec3 axis = Vec3::UnitZ();
  EnvSolution solution;
};

/// Feasibility of the + outcome state; nullopt when the outcome is degenerate.
std::optional<EnvSolution> measured_solution(const Mat4c& U, const TwoQubitState& state, double epsilon,
                                             const Vec3& axis, double tol);

/// First feasible strength along a fixed axis: grid scan from 0, then bisection
/// against the preceding infeasible grid point.
std::optional<double> epsilon_min_for_axis(const Mat4c& U, const TwoQubitState& state, const Vec3& axis,
                                           const MinEpsilonOptions& opt = {});

/// Sphere-grid search over axes, then compass refinement of the best axis.
MinEpsilonResult minimize_epsilon(const Mat4c& U, const TwoQubitState& state, const MinEpsilonOptions& opt = {});

Vec3 spherical_axis(double theta, double phi);

}  // namespace ugen
