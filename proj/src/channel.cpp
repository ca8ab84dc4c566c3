#include "ugen/channel.hpp"

#include <cmath>
#include <numeric>

namespace ugen {

namespace {

constexpr double kReorthoThreshold = 1e-8;

}  // namespace

KrausChannel::KrausChannel(std::vector<Mat2c> operators) : ops_(std::move(operators)) {
  if (ops_.empty()) throw ParameterError("a channel needs at least one Kraus operator");
}

double KrausChannel::completeness_defect() const {
  Mat2c s = -Mat2c::Identity();
  for (const auto& k : ops_) s += k.adjoint() * k;
  return Eigen::JacobiSVD<Mat2c>(s).singularValues()(0);
}

Mat2c KrausChannel::apply(const Mat2c& rho) const {
  Mat2c out = Mat2c::Zero();
  for (const auto& k : ops_) out += k * rho * k.adjoint();
  return out;
}

KrausChannel probabilistic_unitary_channel(const std::vector<double>& ps, const std::vector<Mat2c>& Vs) {
  if (ps.size() != Vs.size()) throw ParameterError("one probability per unitary is required");
  for (double p : ps) {
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("probabilities must lie in [0, 1]");
  }
  const double total = std::accumulate(ps.begin(), ps.end(), 0.0);
  if (total > 1.0 + 1e-12) throw ParameterError("probabilities sum above one");
  std::vector<Mat2c> ops;
  const double rest = std::max(0.0, 1.0 - total);
  if (rest > 0.0 || ps.empty()) ops.push_back(std::sqrt(rest) * Mat2c::Identity());
  for (std::size_t j = 0; j < ps.size(); ++j) {
    if (!is_unitary(Vs[j])) throw ParameterError("probabilistic channel terms must be unitary");
    ops.push_back(std::sqrt(ps[j]) * Vs[j]);
  }
  return KrausChannel(std::move(ops));
}

Mat4c apply_channel_system_side(const KrausChannel& ch, const Mat4c& rho) {
  Mat4c out = Mat4c::Zero();
  for (const auto& k : ch.operators()) out += conjugate_system(rho, k);
  return out;
}

TwoQubitState apply_channel_system_side(const KrausChannel& ch, const TwoQubitState& state) {
  return decompose(apply_channel_system_side(ch, reconstruct(state)));
}

Dilation stinespring_dilate(const KrausChannel& ch) {
  if (ch.size() != 2) throw ParameterError("stinespring_dilate expects exactly two Kraus operators");
  if (ch.completeness_defect() > 1e-10) throw ParameterError("channel is not trace preserving");
  Mat4c W = Mat4c::Zero();
  W.block<2, 2>(0, 0) = ch.operators()[0];
  W.block<2, 2>(2, 0) = ch.operators()[1];

  int filled = 2;
  for (int e = 0; e < 4 && filled < 4; ++e) {
    Eigen::Vector4cd v = Eigen::Vector4cd::Unit(e);
    const double start = v.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (int c = 0; c < filled; ++c) v -= W.col(c).dot(v) * W.col(c);
      // A second pass is only needed when cancellation was severe.
      if (v.norm() >= kReorthoThreshold * start) break;
    }
    if (v.norm() < kReorthoThreshold) continue;
    W.col(filled++) = v.normalized();
  }
  if (filled < 4) throw InternalError("Gram-Schmidt completion is rank deficient");
  if (!is_unitary(W)) throw InternalError("dilation is not unitary");
  return {W};
}

Mat2c apply_dilation(const Dilation& d, const Mat2c& rho) {
  Mat4c in = Mat4c::Zero();
  in.block<2, 2>(0, 0) = rho;
  const Mat4c out = d.W * in * d.W.adjoint();
  return out.block<2, 2>(0, 0) + out.block<2, 2>(2, 2);
}

Mat2c dilated_experiment(const Dilation& d, const Mat4c& U, const Mat4c& rho_se) {
  using Mat8c = Eigen::Matrix<Complex, 8, 8>;
  // Index 4*ancilla + 2*system + environment.
  Mat8c WI = Mat8c::Zero();
  Mat8c IU = Mat8c::Zero();
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const int ra = r / 2, rs = r % 2, ca = c / 2, cs = c % 2;
      for (int e = 0; e < 2; ++e) WI(4 * ra + 2 * rs + e, 4 * ca + 2 * cs + e) = d.W(r, c);
    }
  }
  IU.block<4, 4>(0, 0) = U;
  IU.block<4, 4>(4, 4) = U;
  Mat8c in = Mat8c::Zero();
  in.block<4, 4>(0, 0) = rho_se;
  const Mat8c G = IU * WI;
  const Mat8c out = G * in * G.adjoint();
  const Mat4c se = out.block<4, 4>(0, 0) + out.block<4, 4>(4, 4);
  return partial_trace(se, Subsystem::System);
}

}  // namespace ugen
