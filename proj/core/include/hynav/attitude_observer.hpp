#pragma once

#include <optional>

#include "hynav/kinematics.hpp"
#include "hynav/types.hpp"

namespace hynav {

/// Discrete attitude-update gain: scalar k (blend x+ = k x- + (1-k) meas) or a
/// full matrix F (3x3 in the Euler chart, 4x4 in the quaternion chart).
class AttitudeGain {
 public:
  static AttitudeGain scalar(double k) { return AttitudeGain(k, {}); }
  static AttitudeGain matrix(MatX f) { return AttitudeGain(0.0, std::move(f)); }

  bool is_scalar() const { return !f_.has_value(); }
  double k() const { return k_; }
  const MatX& F() const { return *f_; }

 private:
  AttitudeGain(double k, std::optional<MatX> f) : k_(k), f_(std::move(f)) {}
  double k_;
  std::optional<MatX> f_;
};

struct GainCertificate {
  double lambda_bar{};       // lambda_max(F^T F), = k^2 for scalar gains
  double commutator_norm{};  // ||Theta F - F Theta||_F (0 for scalar gains)
  bool commutes{true};
  bool certified{false};
};

/// Certifies lambda_bar < 1 uniformly; matrix gains additionally must commute
/// with the supplied metric factor (tolerance commute_tol) when one is given.
GainCertificate certify_attitude_gain(const AttitudeGain& gain,
                                      const MatX* theta_i = nullptr,
                                      double commute_tol = 1e-8);

/// Continuous stage: xhat_dot = H^-1(xhat) * omega. Throws GimbalLock.
Vec3 attitude_continuous_field(const EulerAngles& xhat, const Vec3& omega);

/// Discrete stage, Euler chart. Measurement components are unwrapped to the
/// nearest 2*pi representative of the prior before blending. Matrix gains
/// require theta_i for the commutation certificate. Throws UncertifiedGain.
EulerAngles attitude_discrete_update(const EulerAngles& pre,
                                     const EulerAngles& meas,
                                     const AttitudeGain& gain,
                                     const Mat3* theta_i = nullptr);

/// Discrete stage, quaternion chart: sign-aligns the measurement to the prior
/// (double cover), blends, renormalizes. Throws UncertifiedGain.
UnitQuaternion quaternion_discrete_update(const UnitQuaternion& pre,
                                          const UnitQuaternion& meas,
                                          const AttitudeGain& gain);

}  // namespace hynav
