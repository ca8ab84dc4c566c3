#pragma once

// Small derivative-free minimizers.

#include <functional>

#include <Eigen/Dense>

namespace ugen {

struct NelderMeadOptions {
  int max_evals = 2000;
  double initial_step = 0.25;
  double xtol = 1e-10;
  double ftol = 1e-14;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double f = 0.0;
  int evals = 0;
};

using Objective = std::function<double(const Eigen::VectorXd&)>;

/// Standard simplex method (reflection 1, expansion 2, contraction 1/2, shrink 1/2)
/// started from an axis-aligned simplex around x0.
NelderMeadResult nelder_mead(const Objective& f, const Eigen::VectorXd& x0, const NelderMeadOptions& opt = {});

/// Minimizer of a unimodal function on [lo, hi].
double golden_section(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12);

}  // namespace ugen
