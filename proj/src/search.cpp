#include "ugen/search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "ugen/optimize.hpp"

namespace ugen {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kAxisGrid = 720;
constexpr int kStarts = 32;
constexpr int kEvalsPerStart = 2000;
constexpr double kPenalties[3] = {1e2, 1e4, 1e6};
constexpr int kPhaseBudget[3] = {700, 650, 650};
constexpr int kBallGrid = 15;
constexpr std::size_t kGridSeeds = 8;
constexpr int kDiskRadii = 41;
constexpr int kDiskAngles = 72;
constexpr int kKrausStarts = 8;
constexpr int kKrausPhaseBudget = 3000;

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  const std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, workers)), std::max<std::size_t>(n, 1));
  if (nw == 1) {
    for (std::size_t k = 0; k < n; ++k) fn(k);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < nw; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t k = w; k < n; k += nw) fn(k);
    });
  }
  for (auto& t : pool) t.join();
}

class CaseRng {
 public:
  CaseRng(std::uint64_t seed, int id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(id)};
    engine_.seed(seq);
  }

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 engine_;
};

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

struct Candidate {
  Vec3 zeta;
  double residual;
  bool valid;
};

Candidate solve_rotated(const CaseRecord& c, const Vec3& a, const Mat3& T, double tol) {
  // Strict |zeta| <= 1 inside the search so boundary optima survive revalidation.
  const EnvSolution s = solve_system(matching_system(c.alpha, a, c.state.b(), T), tol);
  return {s.zeta, s.residual_norm, s.residual_norm <= tol && s.zeta.norm() <= 1.0};
}

double unitary_fidelity(const Vec3& a, const Mat3& O) { return 1.0 - 0.5 * (a.squaredNorm() - a.dot(O * a)); }

Vec3 unit_axis_or_z(const Vec3& a) { return a.norm() > 1e-12 ? Vec3(a.normalized()) : Vec3::UnitZ(); }

/// Deterministic starting rotation vectors: 16 Fibonacci-sphere directions at two angles.
std::vector<Vec3> start_points() {
  std::vector<Vec3> pts;
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < kStarts / 2; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / kStarts;
    const double r = std::sqrt(1.0 - z * z);
    const Vec3 n(r * std::cos(golden * k), r * std::sin(golden * k), z);
    pts.push_back(n * (kPi / 3.0));
    pts.push_back(n * (2.0 * kPi / 3.0));
  }
  return pts;
}

/// Axis-rotation search: grid over theta, then golden refinement of |zeta| near the
/// best grid points.
bool axis_rotation_search(const CaseRecord& c, double tol, double& theta_out) {
  const Vec3& a = c.state.a();
  if (a.norm() <= 1e-12) return false;
  const Vec3 n = a.normalized();
  auto merit = [&](double th) {
    const Mat3 O = rotation_from_vector(th * n);
    const Candidate k = solve_rotated(c, a, O * c.state.T(), tol);
    return k.residual > tol ? 1e3 + k.residual : k.zeta.norm();
  };
  std::vector<double> m(kAxisGrid);
  const double step = 2.0 * kPi / kAxisGrid;
  for (int k = 0; k < kAxisGrid; ++k) {
    const double th = k * step;
    const Mat3 O = rotation_from_vector(th * n);
    if (solve_rotated(c, a, O * c.state.T(), tol).valid) {
      theta_out = th;
      return true;
    }
    m[static_cast<std::size_t>(k)] = merit(th);
  }
  std::vector<int> minima;
  for (int k = 0; k < kAxisGrid; ++k) {
    const double l = m[static_cast<std::size_t>((k + kAxisGrid - 1) % kAxisGrid)];
    const double r = m[static_cast<std::size_t>((k + 1) % kAxisGrid)];
    const double v = m[static_cast<std::size_t>(k)];
    if (v <= l && v <= r) minima.push_back(k);
  }
  std::stable_sort(minima.begin(), minima.end(),
                   [&](int x, int y) { return m[static_cast<std::size_t>(x)] < m[static_cast<std::size_t>(y)]; });
  if (minima.size() > 4) minima.resize(4);
  for (int k : minima) {
    const double th = golden_section(merit, (k - 1) * step, (k + 1) * step, 1e-13);
    const Mat3 O = rotation_from_vector(th * n);
    if (solve_rotated(c, a, O * c.state.T(), tol).valid) {
      theta_out = th;
      return true;
    }
  }
  return false;
}


/// Two Kraus operators from 16 reals: the 4x2 matrix X is orthonormalized to the
/// isometry X (X^dag X)^{-1/2}, whose 2x2 blocks are K1 and K2.
std::vector<Mat2c> kraus_from_params(const Eigen::VectorXd& x) {
  Eigen::Matrix<Complex, 4, 2> X;
  for (int r = 0; r < 4; ++r) {
    for (int col = 0; col < 2; ++col) {
      const int k = 2 * (2 * r + col);
      X(r, col) = Complex(x(k), x(k + 1));
    }
  }
  const Eigen::SelfAdjointEigenSolver<Mat2c> es(X.adjoint() * X);
  const Eigen::Vector2d ev = es.eigenvalues().cwiseMax(1e-300);
  const Mat2c inv_sqrt = es.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().adjoint();
  const Eigen::Matrix<Complex, 4, 2> W = X * inv_sqrt;
  return {W.topRows<2>(), W.bottomRows<2>()};
}

Eigen::VectorXd params_from_kraus(const std::vector<Mat2c>& k) {
  Eigen::VectorXd x(16);
  for (int r = 0; r < 4; ++r) {
    for (int col = 0; col < 2; ++col) {
      const Complex z = k[static_cast<std::size_t>(r / 2)](r % 2, col);
      x(2 * (2 * r + col)) = z.real();
      x(2 * (2 * r + col) + 1) = z.imag();
    }
  }
  return x;
}

/// Affine Bloch action r -> M r + t of a Kraus channel.
void bloch_action(const std::vector<Mat2c>& k, Mat3& M, Vec3& t) {
  const std::array<Mat2c, 3> sig = {pauli(0), pauli(1), pauli(2)};
  auto apply = [&](const Mat2c& x) {
    Mat2c y = Mat2c::Zero();
    for (const Mat2c& kk : k) y += kk * x * kk.adjoint();
    return y;
  };
  const Mat2c e_id = apply(Mat2c::Identity());
  for (int i = 0; i < 3; ++i) {
    t(i) = 0.5 * (sig[static_cast<std::size_t>(i)] * e_id).trace().real();
    const Mat2c e_j = apply(sig[static_cast<std::size_t>(i)]);
    for (int r = 0; r < 3; ++r) M(r, i) = 0.5 * (sig[static_cast<std::size_t>(r)] * e_j).trace().real();
  }
}

struct KrausEval {
  Vec3 drift;  // image of a minus a
  Candidate cand;
};

KrausEval eval_kraus(const CaseRecord& c, const Eigen::VectorXd& x, double tol) {
  const std::vector<Mat2c> k = kraus_from_params(x);
  Mat3 M;
  Vec3 t;
  bloch_action(k, M, t);
  const Vec3& a = c.state.a();
  const Vec3 a_out = M * a + t;
  const Mat3 T_out = M * c.state.T() + t * c.state.b().transpose();
  return {a_out - a, solve_rotated(c, a_out, T_out, tol)};
}

/// Gauss-Newton projection onto channels that fix the reduced state.
Eigen::VectorXd project_fixed_point(const CaseRecord& c, Eigen::VectorXd x, double tol) {
  for (int it = 0; it < 30; ++it) {
    const Vec3 g = eval_kraus(c, x, tol).drift;
    if (g.norm() < 1e-15) break;
    Eigen::Matrix<double, 3, 16> J;
    const double h = 1e-7;
    for (int j = 0; j < 16; ++j) {
      Eigen::VectorXd xp = x, xm = x;
      xp(j) += h;
      xm(j) -= h;
      J.col(j) = (eval_kraus(c, xp, tol).drift - eval_kraus(c, xm, tol).drift) / (2.0 * h);
    }
    x -= J.completeOrthogonalDecomposition().solve(g);
  }
  return x;
}
}  // namespace

const char* to_string(Stage s) {
  switch (s) {
    case Stage::None:
      return "none";
    case Stage::AxisRotation:
      return "axis_rotation";
    case Stage::GeneralSU2:
      return "general_su2";
    case Stage::Kraus:
      return "kraus";
  }
  return "none";
}

Mat3 rotation_from_vector(const Vec3& v) {
  const double th = v.norm();
  if (th < 1e-300) return Mat3::Identity();
  return Eigen::AngleAxisd(th, v / th).toRotationMatrix();
}

Mat2c unitary_from_vector(const Vec3& v) {
  const double th = v.norm();
  if (th < 1e-300) return Mat2c::Identity();
  return local_rotation_unitary(LocalRotation(v / th, th));
}

CaseRecord make_case(int id, const NonlocalParams& alpha, const TwoQubitState& state, double tol) {
  CaseRecord c;
  c.id = id;
  c.alpha = alpha;
  c.state = state;
  c.baseline = solve_env(alpha, state, tol);
  c.retained = !c.baseline.valid();
  return c;
}

CaseRecord generate_case(std::uint64_t seed, int id, const GenerateOptions& opt, double tol) {
  CaseRng rng(seed, id);
  for (;;) {
    NonlocalParams p;
    for (int i = 0; i < 3; ++i) p.alpha(i) = rng.uniform(0.0, 2.0 * kPi);
    Vec3 s2, c2;
    for (int i = 0; i < 3; ++i) {
      s2(i) = std::sin(2.0 * p.alpha(i));
      c2(i) = std::cos(2.0 * p.alpha(i));
    }
    Mat3 T = Mat3::Zero();
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i != j) T(i, j) = sgn(c2(i) * s2(j)) * rng.uniform(0.25, 1.0);
      }
    }
    if (opt.random_diagonal) {
      for (int i = 0; i < 3; ++i) T(i, i) = rng.uniform(-1.0, 1.0);
    }
    Vec3 a, b;
    for (int i = 0; i < 3; ++i) a(i) = rng.uniform(-0.5, 0.5);
    for (int k = 0; k < 3; ++k) {
      const int i = (k + 1) % 3, j = (k + 2) % 3;
      b(k) = sgn(s2(i) * s2(j)) * std::abs(rng.uniform(-0.5, 0.5));
    }
    const TwoQubitState s(a, b, T);
    if (!is_valid(s).valid) continue;
    return make_case(id, p, s, tol);
  }
}

std::vector<CaseRecord> generate_cases(int n, std::uint64_t seed, const GenerateOptions& opt, double tol,
                                       int workers) {
  if (n < 1) throw ParameterError("case count must be positive");
  std::vector<CaseRecord> out(static_cast<std::size_t>(n));
  parallel_for(out.size(), workers, [&](std::size_t k) { out[k] = generate_case(seed, static_cast<int>(k), opt, tol); });
  return out;
}

OptimizationResult revalidate(const CaseRecord& c, const OptimizationResult& r, double tol) {
  OptimizationResult out = r;
  const Mat4c rho = reconstruct(c.state);
  const Mat2c rho_s = qubit_density(c.state.a());
  Mat4c moved;
  Mat2c rho_s_out;
  if (r.stage == Stage::Kraus) {
    const KrausChannel ch(r.kraus);
    moved = apply_channel_system_side(ch, rho);
    rho_s_out = ch.apply(rho_s);
  } else {
    moved = conjugate_system(rho, r.V);
    rho_s_out = r.V * rho_s * r.V.adjoint();
  }
  const EnvSolution s = solve_env(nonlocal_unitary(c.alpha), decompose(moved), tol);
  out.zeta = s.zeta;
  out.residual = s.residual_norm;
  out.resolved = s.valid();
  out.fidelity = fidelity_qubit(rho_s, rho_s_out);
  return out;
}

OptimizationResult optimize_local_unitary(const CaseRecord& c, double tol) {
  OptimizationResult res;
  res.case_id = c.id;
  const Vec3& a = c.state.a();

  double theta = 0.0;
  if (axis_rotation_search(c, tol, theta)) {
    res.stage = Stage::AxisRotation;
    res.V = unitary_from_vector(theta * a.normalized());
    return revalidate(c, res, tol);
  }

  res.stage = Stage::GeneralSU2;
  double best_f = -1.0;
  Vec3 best_v = Vec3::Zero();
  auto record = [&](const Vec3& v, const Mat3& O, const Candidate& k) {
    if (!k.valid) return;
    const double f = unitary_fidelity(a, O);
    if (f > best_f) {
      best_f = f;
      best_v = v;
    }
  };
  // Coarse scan of the rotation ball; feasible points with the best fidelity seed
  // extra starts ahead of the fixed ones.
  std::vector<std::pair<double, Vec3>> seeds;
  for (int i = 0; i < kBallGrid; ++i) {
    for (int j = 0; j < kBallGrid; ++j) {
      for (int k = 0; k < kBallGrid; ++k) {
        const double h = 2.0 * kPi / (kBallGrid - 1);
        const Vec3 v(-kPi + i * h, -kPi + j * h, -kPi + k * h);
        if (v.norm() > kPi + 1e-12) continue;
        const Mat3 O = rotation_from_vector(v);
        const Candidate cand = solve_rotated(c, O * a, O * c.state.T(), tol);
        record(v, O, cand);
        if (cand.valid) seeds.emplace_back(-unitary_fidelity(a, O), v);
      }
    }
  }
  std::stable_sort(seeds.begin(), seeds.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<Vec3> starts;
  for (std::size_t k = 0; k < seeds.size() && k < kGridSeeds; ++k) starts.push_back(seeds[k].second);
  for (const Vec3& v : start_points()) starts.push_back(v);
  for (const Vec3& start : starts) {
    Eigen::VectorXd x = start;
    for (int phase = 0; phase < 3; ++phase) {
      const double mu = kPenalties[phase];
      auto pen = [&](const Eigen::VectorXd& y) {
        const Vec3 v = y;
        const Mat3 O = rotation_from_vector(v);
        const Candidate k = solve_rotated(c, O * a, O * c.state.T(), tol);
        record(v, O, k);
        const double over = std::max(0.0, k.zeta.norm() - 1.0);
        return -unitary_fidelity(a, O) + mu * (over * over + k.residual * k.residual);
      };
      NelderMeadOptions nm;
      nm.max_evals = kPhaseBudget[phase];
      nm.initial_step = phase == 0 ? 0.3 : 0.01;
      x = nelder_mead(pen, x, nm).x;
    }
  }
  if (best_f >= 0.0) {
    // Polish inside the feasible set.
    auto barrier = [&](const Eigen::VectorXd& y) {
      const Vec3 v = y;
      const Mat3 O = rotation_from_vector(v);
      const Candidate k = solve_rotated(c, O * a, O * c.state.T(), tol);
      return k.valid ? -unitary_fidelity(a, O) : std::numeric_limits<double>::infinity();
    };
    NelderMeadOptions nm;
    nm.max_evals = kEvalsPerStart;
    nm.initial_step = 1e-3;
    const NelderMeadResult r = nelder_mead(barrier, Eigen::VectorXd(best_v), nm);
    if (std::isfinite(r.f) && -r.f > best_f) best_v = r.x;
    res.V = unitary_from_vector(best_v);
    return revalidate(c, res, tol);
  }
  res.resolved = false;
  res.fidelity = 0.0;
  return res;
}

OptimizationResult optimize_two_term_kraus(const CaseRecord& c, double tol) {
  OptimizationResult res;
  res.case_id = c.id;
  res.stage = Stage::Kraus;
  const Vec3& a = c.state.a();
  const Vec3 n = unit_axis_or_z(a);

  double theta = 0.0;
  if (axis_rotation_search(c, tol, theta)) {
    const Mat2c V = unitary_from_vector(theta * n);
    res.kraus = {std::sqrt(0.5) * V, std::sqrt(0.5) * V};
    return revalidate(c, res, tol);
  }

  // Averages of two rotations about n act on T as P + r (R(phi) - P), P = n n^T,
  // for any point r e^{i phi} of the unit disk.
  const Mat3 P = n * n.transpose();
  auto merit_xy = [&](double x, double y) {
    double r = std::hypot(x, y);
    const double phi = std::atan2(y, x);
    r = std::min(r, 1.0);
    const Mat3 M = P + r * (rotation_from_vector(phi * n) - P);
    const Candidate k = solve_rotated(c, a, M * c.state.T(), tol);
    return k.residual > tol ? 1e3 + k.residual : k.zeta.norm();
  };
  double best = std::numeric_limits<double>::infinity(), bx = 0.0, by = 0.0;
  for (int i = 0; i < kDiskRadii; ++i) {
    const double r = static_cast<double>(i) / (kDiskRadii - 1);
    for (int j = 0; j < (i == 0 ? 1 : kDiskAngles); ++j) {
      const double phi = 2.0 * kPi * j / kDiskAngles;
      const double m = merit_xy(r * std::cos(phi), r * std::sin(phi));
      if (m < best) {
        best = m;
        bx = r * std::cos(phi);
        by = r * std::sin(phi);
      }
    }
  }
  NelderMeadOptions nm;
  nm.max_evals = kEvalsPerStart;
  nm.initial_step = 0.5 / (kDiskRadii - 1);
  const NelderMeadResult polished =
      nelder_mead([&](const Eigen::VectorXd& v) { return merit_xy(v(0), v(1)); }, Eigen::Vector2d(bx, by), nm);
  if (polished.f < best) {
    best = polished.f;
    bx = polished.x(0);
    by = polished.x(1);
  }
  const double r = std::min(1.0, std::hypot(bx, by));
  const double phi = std::atan2(by, bx);
  const double delta = std::acos(r);
  res.kraus = {std::sqrt(0.5) * unitary_from_vector((phi + delta) * n),
               std::sqrt(0.5) * unitary_from_vector((phi - delta) * n)};
  const OptimizationResult disk = revalidate(c, res, tol);
  if (disk.resolved) return disk;

  // General two-term channels: drive |zeta| down with the fixed-point drift
  // penalized, then project exactly onto channels that fix the reduced state.
  std::vector<Eigen::VectorXd> starts = {params_from_kraus(res.kraus)};
  std::mt19937_64 gen(static_cast<std::uint64_t>(c.id) * 0x9E3779B97F4A7C15ULL + 1);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int s = 1; s < kKrausStarts; ++s) {
    Eigen::VectorXd x(16);
    for (int j = 0; j < 16; ++j) x(j) = normal(gen);
    starts.push_back(x);
  }
  OptimizationResult best_k = disk;
  for (const Eigen::VectorXd& start : starts) {
    Eigen::VectorXd x = start;
    for (int phase = 0; phase < 3; ++phase) {
      const double mu = kPenalties[phase];
      auto pen = [&](const Eigen::VectorXd& y) {
        const KrausEval e = eval_kraus(c, y, tol);
        return e.cand.zeta.squaredNorm() + mu * (e.drift.squaredNorm() + e.cand.residual * e.cand.residual);
      };
      NelderMeadOptions nm;
      nm.max_evals = kKrausPhaseBudget;
      nm.initial_step = phase == 0 ? 0.3 : 0.02;
      x = nelder_mead(pen, x, nm).x;
    }
    x = project_fixed_point(c, x, tol);
    OptimizationResult trial = res;
    trial.kraus = kraus_from_params(x);
    trial = revalidate(c, trial, tol);
    if (trial.resolved && trial.fidelity >= 1.0 - kUnitFidelityTol) return trial;
    if (trial.resolved && (!best_k.resolved || trial.fidelity > best_k.fidelity)) best_k = trial;
  }
  return best_k;
}

SweepReport sweep_cases(const std::vector<CaseRecord>& cases, std::uint64_t seed, double tol, int workers) {
  SweepReport rep;
  rep.rows.resize(cases.size());
  parallel_for(cases.size(), workers, [&](std::size_t k) {
    SweepRow& row = rep.rows[k];
    row.record = cases[k];
    if (!row.record.retained) {
      row.unitary.case_id = row.record.id;
      row.unitary.resolved = true;
      row.unitary.fidelity = 1.0;
      row.unitary.zeta = row.record.baseline.zeta;
      row.unitary.residual = row.record.baseline.residual_norm;
      row.final_result = row.unitary;
      return;
    }
    row.unitary = optimize_local_unitary(row.record, tol);
    row.final_result = row.unitary;
    if (!row.unitary.resolved || row.unitary.fidelity < 1.0 - kUnitFidelityTol) {
      row.kraus_attempted = true;
      const OptimizationResult k = optimize_two_term_kraus(row.record, tol);
      if (k.resolved && k.fidelity >= row.unitary.fidelity) row.final_result = k;
    }
  });

  SweepSummary& s = rep.summary;
  s.n = static_cast<int>(cases.size());
  s.seed = seed;
  s.tol = tol;
  double fsum = 0.0;
  for (const SweepRow& row : rep.rows) {
    if (!row.record.retained) continue;
    ++s.retained;
    if (row.unitary.resolved) {
      ++s.resolved_unitary;
      s.unitary_fidelity_min = std::min(s.unitary_fidelity_min, row.unitary.fidelity);
      fsum += row.unitary.fidelity;
    }
    const OptimizationResult& f = row.final_result;
    if (f.resolved) {
      ++s.resolved;
      s.final_fidelity_min = std::min(s.final_fidelity_min, f.fidelity);
      s.max_residual = std::max(s.max_residual, f.residual);
    } else {
      ++s.unresolved;
    }
    switch (f.stage) {
      case Stage::AxisRotation:
        ++s.stage_axis;
        break;
      case Stage::GeneralSU2:
        ++s.stage_su2;
        break;
      case Stage::Kraus:
        ++s.stage_kraus;
        break;
      case Stage::None:
        break;
    }
    if (row.kraus_attempted) {
      ++s.kraus_attempted;
      if (f.stage == Stage::Kraus && f.resolved) ++s.kraus_resolved;
    }
  }
  s.unitary_fidelity_mean = s.resolved_unitary > 0 ? fsum / s.resolved_unitary : 1.0;
  return rep;
}

SweepReport sweep(int n, std::uint64_t seed, double tol, int workers, const GenerateOptions& opt) {
  return sweep_cases(generate_cases(n, seed, opt, tol, workers), seed, tol, workers);
}

std::string sweep_csv(const SweepReport& r) {
  std::ostringstream os;
  os << "id,alpha1,alpha2,alpha3,retained,stage,fidelity,residual,zeta1,zeta2,zeta3,unitary_stage,unitary_fidelity\n";
  char buf[64];
  auto num = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::string(buf);
  };
  for (const SweepRow& row : r.rows) {
    const OptimizationResult& f = row.final_result;
    os << row.record.id;
    for (int i = 0; i < 3; ++i) os << ',' << num(row.record.alpha.alpha(i));
    os << ',' << (row.record.retained ? 1 : 0) << ',' << to_string(f.stage) << ',' << num(f.fidelity) << ','
       << num(f.residual);
    for (int i = 0; i < 3; ++i) os << ',' << num(f.zeta(i));
    os << ',' << to_string(row.unitary.stage) << ',' << num(row.unitary.fidelity) << '\n';
  }
  return os.str();
}

}  // namespace ugen
