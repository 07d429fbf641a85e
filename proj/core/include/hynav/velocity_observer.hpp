#pragma once

#include <array>
#include <optional>

#include "hynav/types.hpp"

namespace hynav {

/// Continuous stage: vhat_dot = A(attitude estimate) * gamma. The caller
/// supplies the DCM from whichever chart is in use.
inline Vec3 velocity_continuous_field(const Mat3& dcm_estimate,
                                      const Vec3& gamma) {
  return dcm_estimate * gamma;
}

/// Consecutive-position-fix update:
///   vhat+ = vhat- - integral_v / dt_i + (r_ip1 - r_i) / dt_i
/// where integral_v accumulates vhat over exactly [t_i, t_ip1].
Vec3 velocity_update_from_positions(const Vec3& vhat_pre, const Vec3& integral_v,
                                    const Vec3& r_i, const Vec3& r_ip1,
                                    double dt_i);

/// Direct velocity fix: vhat+ = F2 vhat- + (I - F2) v_meas.
/// Throws UncertifiedGain unless lambda_max(F2^T F2) < 1.
Vec3 velocity_update_direct(const Vec3& vhat_pre, const Vec3& v_meas,
                            const Mat3& f2);

/// Consecutive-range-fix update:
///   vhat+ = vhat- - 1/(2 dt_i) * (K_ip1 * residual_pre_ip1 - stored_term_i)
/// where K = J^-1 (unit gain), residual_pre_ip1 is the squared-range residual
/// at the current instant evaluated at the PRE-update position estimate, and
/// stored_term_i = K_i * residual at the previous fix evaluated at the
/// POST-update position estimate.
Vec3 velocity_update_from_ranges(const Vec3& vhat_pre, const Mat3& k_ip1,
                                 const Vec3& residual_pre_ip1,
                                 const Vec3& stored_term_i, double dt_i);

/// Bookkeeping carried by the pipeline between translation fixes.
struct VelocityObserverState {
  Vec3 vhat{Vec3::Zero()};
  Vec3 integral_v{Vec3::Zero()};            // ∫ vhat dt since the last fix
  std::optional<double> t_last_fix;         // empty until the first fix
  std::optional<Vec3> r_fix_prev;           // position-fix mode
  std::optional<Vec3> stored_range_term;    // range mode (K_i * post residual)

  /// Throws MissingAccumulator when an update is requested with no open
  /// interval; returns dt_i otherwise.
  double close_interval(double t) const;
};

}  // namespace hynav
