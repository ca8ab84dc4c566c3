#pragma once

// Single-qubit channels in Kraus form and their one-ancilla Stinespring dilation.

#include <vector>

#include "ugen/qstate.hpp"

namespace ugen {

class KrausChannel {
 public:
  explicit KrausChannel(std::vector<Mat2c> operators);

  const std::vector<Mat2c>& operators() const { return ops_; }
  std::size_t size() const { return ops_.size(); }

  /// Operator 2-norm of sum_k K_k^dagger K_k - I.
  double completeness_defect() const;

  Mat2c apply(const Mat2c& rho) const;

 private:
  std::vector<Mat2c> ops_;
};

/// {sqrt(1 - sum p) I} followed by {sqrt(p_j) V_j}. The identity term is
/// omitted when sum p = 1 exactly.
KrausChannel probabilistic_unitary_channel(const std::vector<double>& ps, const std::vector<Mat2c>& Vs);

/// sum_k (K_k (x) I) rho (K_k (x) I)^dagger
Mat4c apply_channel_system_side(const KrausChannel& ch, const Mat4c& rho);
TwoQubitState apply_channel_system_side(const KrausChannel& ch, const TwoQubitState& state);

/// W acts on ancilla (x) system (index 2*ancilla + system); K_i = <i|_A W |0>_A.
struct Dilation {
  Mat4c W;

  Mat2c kraus(int i) const { return W.block<2, 2>(2 * i, 0); }
};

/// Two-term channels only. The first block column of W is (K1; K2); the rest is
/// completed by modified Gram-Schmidt.
Dilation stinespring_dilate(const KrausChannel& ch);

/// Tr_A[W (|0><0| (x) rho) W^dagger]
Mat2c apply_dilation(const Dilation& d, const Mat2c& rho);

/// Tr_{A,E}[(I (x) U)(W (x) I)(|0><0| (x) rho_SE)(W (x) I)^dagger (I (x) U)^dagger] on
/// ancilla (x) system (x) environment.
Mat2c dilated_experiment(const Dilation& d, const Mat4c& U, const Mat4c& rho_se);

}  // namespace ugen
