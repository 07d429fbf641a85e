#include "hynav/position_observer.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace hynav {

Mat3 beacon_difference_matrix(const std::array<Vec3, 4>& b) {
  Mat3 j;
  j.row(0) = (b[1] - b[0]).transpose();
  j.row(1) = (b[2] - b[1]).transpose();
  j.row(2) = (b[3] - b[2]).transpose();
  return j;
}

double beacon_triple_product(const std::array<Vec3, 4>& b) {
  const Vec3 ab = b[1] - b[0];
  const Vec3 bc = b[2] - b[1];
  const Vec3 cd = b[3] - b[2];
  return ab.dot(bc.cross(cd));
}

bool beacons_coplanar(const Mat3& j, double rel_tol) {
  const double scale =
      j.row(0).norm() * j.row(1).norm() * j.row(2).norm();
  return std::abs(j.determinant()) < rel_tol * std::max(scale, 1e-300);
}

std::array<double, 4> predicted_ranges(const Vec3& r,
                                       const std::array<Vec3, 4>& beacons) {
  return {(r - beacons[0]).norm(), (r - beacons[1]).norm(),
          (r - beacons[2]).norm(), (r - beacons[3]).norm()};
}

Vec3 squared_range_residual(const std::array<double, 4>& yhat,
                            const std::array<double, 4>& y) {
  for (double v : y) {
    if (v < 0.0) throw Error("negative measured range rejected");
  }
  Vec3 res;
  for (int i = 0; i < 3; ++i) {
    res[i] = (yhat[i] * yhat[i] - yhat[i + 1] * yhat[i + 1]) -
             (y[i] * y[i] - y[i + 1] * y[i + 1]);
  }
  return res;
}

Mat3 range_gain(const Mat3& j, double k, double rel_tol) {
  if (beacons_coplanar(j, rel_tol)) {
    throw SingularBeaconGeometry("beacon-difference matrix singular, det = " +
                                 std::to_string(j.determinant()));
  }
  return k * j.inverse();
}

Vec3 position_update_linear(const Vec3& rhat_pre, const Vec3& r_meas,
                            const Mat3& f3) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(f3.transpose() * f3);
  const double lambda_bar = es.eigenvalues().maxCoeff();
  if (!(lambda_bar < 1.0)) {
    throw UncertifiedGain("position gain rejected: lambda_bar = " +
                          std::to_string(lambda_bar));
  }
  return f3 * rhat_pre + (Mat3::Identity() - f3) * r_meas;
}

Vec3 position_update_ranges(const Vec3& rhat_pre,
                            const std::array<double, 4>& yhat_pre,
                            const std::array<double, 4>& y_meas,
                            const Mat3& k_gain) {
  return rhat_pre - 0.5 * k_gain * squared_range_residual(yhat_pre, y_meas);
}

RangeGainCertificate certify_position_range_gain(double k, double lambda_bar,
                                                 double max_dt) {
  RangeGainCertificate cert;
  cert.lambda_bar_i = (1.0 - k) * (1.0 - k);
  cert.product = cert.lambda_bar_i * std::exp(lambda_bar * max_dt);
  cert.certified = cert.product < 1.0;
  return cert;
}

}  // namespace hynav
