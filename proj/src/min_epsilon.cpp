#include "ugen/min_epsilon.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace ugen {

Vec3 spherical_axis(double theta, double phi) {
  return Vec3(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)).normalized();
}

std::optional<EnvSolution> measured_solution(const Mat4c& U, const TwoQubitState& state, double epsilon,
                                             const Vec3& axis, double tol) {
  try {
    const MeasurementOutcome out = apply_closed_form(state, WeakMeasurement(epsilon, axis), Outcome::Plus);
    return solve_env(U, out.post_state, tol);
  } catch (const DegenerateOutcome&) {
    return std::nullopt;
  } catch (const InvalidState&) {
    return std::nullopt;
  }
}

namespace {

// Strict |zeta| <= 1 (no round-off slack) so that the boundary is located exactly.
bool feasible(const Mat4c& U, const TwoQubitState& s, double eps, const Vec3& n, double tol) {
  const auto sol = measured_solution(U, s, eps, n, tol);
  return sol && sol->residual_norm <= tol && sol->zeta.norm() <= 1.0;
}

}  // namespace

std::optional<double> epsilon_min_for_axis(const Mat4c& U, const TwoQubitState& state, const Vec3& axis,
                                           const MinEpsilonOptions& opt) {
  const int steps = static_cast<int>(std::lround(1.0 / opt.grid_step));
  double prev = -1.0;
  for (int k = 0; k <= steps; ++k) {
    const double eps = std::min(1.0, k * opt.grid_step);
    if (!feasible(U, state, eps, axis, opt.match_tol)) {
      prev = eps;
      continue;
    }
    if (prev < 0.0) return eps;
    double lo = prev, hi = eps;
    while (hi - lo > opt.bisect_tol) {
      const double mid = 0.5 * (lo + hi);
      if (feasible(U, state, mid, axis, opt.match_tol)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return hi;
  }
  return std::nullopt;
}

MinEpsilonResult minimize_epsilon(const Mat4c& U, const TwoQubitState& state, const MinEpsilonOptions& opt) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const double pi = std::numbers::pi;
  auto objective = [&](double th, double ph) {
    const auto e = epsilon_min_for_axis(U, state, spherical_axis(th, ph), opt);
    return e ? *e : kInf;
  };

  double best = kInf, best_th = 0.0, best_ph = 0.0;
  for (int i = 0; i < opt.polar_points; ++i) {
    const double th = pi * i / (opt.polar_points - 1);
    const int nphi = (i == 0 || i == opt.polar_points - 1) ? 1 : opt.azimuth_points;
    for (int j = 0; j < nphi; ++j) {
      const double ph = 2.0 * pi * j / opt.azimuth_points;
      const double f = objective(th, ph);
      if (f < best) {
        best = f;
        best_th = th;
        best_ph = ph;
      }
      if (best == 0.0) break;
    }
    if (best == 0.0) break;
  }

  MinEpsilonResult out;
  if (!std::isfinite(best)) return out;

  // Compass search; a move is taken only on strict improvement, so grid ties keep
  // the first grid axis.
  double step = pi / (opt.polar_points - 1);
  while (step > opt.axis_tol && best > 0.0) {
    bool moved = false;
    const double probes[4][2] = {{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}};
    for (const auto& d : probes) {
      const double th = best_th + d[0], ph = best_ph + d[1];
      const double f = objective(th, ph);
      if (f < best) {
        best = f;
        best_th = th;
        best_ph = ph;
        moved = true;
        break;
      }
    }
    if (!moved) step *= 0.5;
  }

  out.found = true;
  out.epsilon = best;
  out.axis = spherical_axis(best_th, best_ph);
  out.solution = *measured_solution(U, state, best, out.axis, opt.match_tol);
  return out;
}

}  // namespace ugen
