#include "hynav/velocity_observer.hpp"

#include <string>

#include <Eigen/Eigenvalues>

namespace hynav {

Vec3 velocity_update_from_positions(const Vec3& vhat_pre, const Vec3& integral_v,
                                    const Vec3& r_i, const Vec3& r_ip1,
                                    double dt_i) {
  if (!(dt_i > 0.0)) {
    throw MissingAccumulator("position-pair velocity update with dt_i <= 0");
  }
  return vhat_pre - integral_v / dt_i + (r_ip1 - r_i) / dt_i;
}

Vec3 velocity_update_direct(const Vec3& vhat_pre, const Vec3& v_meas,
                            const Mat3& f2) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(f2.transpose() * f2);
  const double lambda_bar = es.eigenvalues().maxCoeff();
  if (!(lambda_bar < 1.0)) {
    throw UncertifiedGain("velocity gain rejected: lambda_bar = " +
                          std::to_string(lambda_bar));
  }
  return f2 * vhat_pre + (Mat3::Identity() - f2) * v_meas;
}

Vec3 velocity_update_from_ranges(const Vec3& vhat_pre, const Mat3& k_ip1,
                                 const Vec3& residual_pre_ip1,
                                 const Vec3& stored_term_i, double dt_i) {
  if (!(dt_i > 0.0)) {
    throw MissingAccumulator("range-pair velocity update with dt_i <= 0");
  }
  return vhat_pre - (k_ip1 * residual_pre_ip1 - stored_term_i) / (2.0 * dt_i);
}

double VelocityObserverState::close_interval(double t) const {
  if (!t_last_fix.has_value()) {
    throw MissingAccumulator("velocity update requested with no open interval");
  }
  const double dt = t - *t_last_fix;
  if (!(dt > 0.0)) {
    throw MissingAccumulator("velocity fix interval is empty");
  }
  return dt;
}

}  // namespace hynav
