#pragma once

// Randomized campaign: generate constrained correlated states for random
// nonlocal gates, keep those that are not U-generated by a product state, and
// repair them with a local unitary or a two-term Kraus channel on the system.

#include <cstdint>
#include <string>
#include <vector>

#include "ugen/channel.hpp"
#include "ugen/matching.hpp"

namespace ugen {

struct GenerateOptions {
  /// Draw t_ii uniformly from [-1, 1] instead of fixing them at 0.
  bool random_diagonal = false;
};

struct CaseRecord {
  int id = 0;
  NonlocalParams alpha;
  TwoQubitState state = TwoQubitState::maximally_mixed();
  EnvSolution baseline;
  bool retained = false;
};

/// Pure function of (seed, id): alpha_i in [0, 2pi); off-diagonal |t_ij| in [1/4, 1]
/// with sign sgn(cos 2alpha_i sin 2alpha_j); a_i in [-1/2, 1/2]; |b_k| in [0, 1/2] with
/// sign sgn(sin 2alpha_i sin 2alpha_j) for {i, j, k} = {1, 2, 3}. Non-PSD draws are
/// redrawn from the same stream.
CaseRecord generate_case(std::uint64_t seed, int id, const GenerateOptions& opt = {}, double tol = kDefaultMatchTol);

std::vector<CaseRecord> generate_cases(int n, std::uint64_t seed, const GenerateOptions& opt = {},
                                       double tol = kDefaultMatchTol, int workers = 1);

/// Baseline classification of an externally supplied case.
CaseRecord make_case(int id, const NonlocalParams& alpha, const TwoQubitState& state, double tol = kDefaultMatchTol);

enum class Stage { None, AxisRotation, GeneralSU2, Kraus };

const char* to_string(Stage s);

struct OptimizationResult {
  int case_id = 0;
  Stage stage = Stage::None;
  bool resolved = false;
  Mat2c V = Mat2c::Identity();       // local-unitary stages
  std::vector<Mat2c> kraus;          // Kraus stage
  Vec3 zeta = Vec3::Zero();
  double residual = 0.0;
  double fidelity = 0.0;
};

/// Stage 1: rotations about the system Bloch vector (fidelity 1). Stage 2:
/// penalized multi-start simplex over SU(2) maximizing fidelity.
OptimizationResult optimize_local_unitary(const CaseRecord& c, double tol = kDefaultMatchTol);

/// Two-term channels that fix rho_S. Cases solved by an axis rotation return the
/// degenerate pair sqrt(1/2) V, sqrt(1/2) V. Next come averaged rotations about the
/// system Bloch vector, K_{1,2} = V(phi +- delta)/sqrt2. Last, general isometries
/// (K1; K2) are searched with a penalty on the drift of rho_S and then projected
/// back onto channels that fix it.
OptimizationResult optimize_two_term_kraus(const CaseRecord& c, double tol = kDefaultMatchTol);

/// Recompute zeta, residual and fidelity for a result from dense matrices.
OptimizationResult revalidate(const CaseRecord& c, const OptimizationResult& r, double tol = kDefaultMatchTol);

struct SweepRow {
  CaseRecord record;
  OptimizationResult unitary;
  OptimizationResult final_result;  // unitary, or Kraus when the unitary fidelity is below one
  bool kraus_attempted = false;
};

struct SweepSummary {
  int n = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  int retained = 0;
  int resolved_unitary = 0;
  int resolved = 0;
  int unresolved = 0;
  int stage_axis = 0;
  int stage_su2 = 0;
  int stage_kraus = 0;
  int kraus_attempted = 0;
  int kraus_resolved = 0;
  double unitary_fidelity_min = 1.0;
  double unitary_fidelity_mean = 1.0;
  double final_fidelity_min = 1.0;
  double max_residual = 0.0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  SweepSummary summary;
};

/// Threshold below which a unitary solution counts as sub-unity fidelity.
inline constexpr double kUnitFidelityTol = 1e-12;

SweepReport sweep(int n, std::uint64_t seed, double tol = kDefaultMatchTol, int workers = 1,
                  const GenerateOptions& opt = {});
SweepReport sweep_cases(const std::vector<CaseRecord>& cases, std::uint64_t seed, double tol, int workers);

std::string sweep_csv(const SweepReport& r);

/// Rotation matrix exp([v]x) and its SU(2) lift exp(-i v.sigma/2).
Mat3 rotation_from_vector(const Vec3& v);
Mat2c unitary_from_vector(const Vec3& v);

}  // namespace ugen
