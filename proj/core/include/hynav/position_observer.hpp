#pragma once

#include <array>

#include "hynav/types.hpp"

namespace hynav {

/// Continuous stage: rhat_dot = vhat.
inline Vec3 position_continuous_field(const Vec3& vhat) { return vhat; }

/// Beacon-difference matrix J with rows (B-A), (C-B), (D-C).
Mat3 beacon_difference_matrix(const std::array<Vec3, 4>& beacons);

/// Triple product AB . (BC x CD); zero exactly when the beacons are coplanar
/// (equals det J).
double beacon_triple_product(const std::array<Vec3, 4>& beacons);

/// Singularity test: |det J| < rel_tol * product of row norms.
bool beacons_coplanar(const Mat3& j, double rel_tol = 1e-9);

/// Predicted ranges from a position estimate to the four beacons.
std::array<double, 4> predicted_ranges(const Vec3& r,
                                       const std::array<Vec3, 4>& beacons);

/// Squared-range difference residual: component i is
/// (yhat_i^2 - yhat_{i+1}^2) - (y_i^2 - y_{i+1}^2). Linear in the position
/// error: residual = 2 J (rhat - r). Throws Error on negative measured ranges.
Vec3 squared_range_residual(const std::array<double, 4>& yhat,
                            const std::array<double, 4>& y);

/// K = k * J^-1. Throws SingularBeaconGeometry when J fails the coplanarity
/// test.
Mat3 range_gain(const Mat3& j, double k, double rel_tol = 1e-9);

/// Linear discrete stage: rhat+ = F3 rhat- + (I - F3) r_meas.
/// Throws UncertifiedGain unless lambda_max(F3^T F3) < 1.
Vec3 position_update_linear(const Vec3& rhat_pre, const Vec3& r_meas,
                            const Mat3& f3);

/// Range discrete stage: rhat+ = rhat- - 1/2 K * residual. With K = k J^-1
/// the error map is exactly (1 - k) (rhat - r), at any error magnitude.
Vec3 position_update_ranges(const Vec3& rhat_pre,
                            const std::array<double, 4>& yhat_pre,
                            const std::array<double, 4>& y_meas, const Mat3& k_gain);

struct RangeGainCertificate {
  double lambda_bar_i{};  // (1 - k)^2
  double product{};       // lambda_bar_i * exp(lambda_bar * max_dt)
  bool certified{false};
};

/// Certifies (1-k)^2 * exp(lambda_bar * dt) < 1 uniformly over spacings up to
/// max_dt (lambda_bar is the continuous-stage rate bound, 0 in the hierarchy).
RangeGainCertificate certify_position_range_gain(double k, double lambda_bar,
                                                 double max_dt);

}  // namespace hynav
