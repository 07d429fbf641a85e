#pragma once

#include <Eigen/Dense>

#include "hynav/errors.hpp"

namespace hynav {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

// |cos theta| floor below which the Euler-rate matrix is treated as singular.
inline constexpr double kGimbalEps = 1e-6;
// Admissible norm defect for quaternion inputs; anything worse is rejected.
inline constexpr double kUnitQuatTol = 1e-6;

// Attitude chart selection for truth generation and the observer pipeline.
enum class Chart { Euler, Quaternion };

/// Euler angle triple (psi, theta, phi): psi about the roll axis, theta the
/// pitch angle, phi the yaw angle. The chart is valid for |theta| < pi/2.
struct EulerAngles {
  double psi{0.0};
  double theta{0.0};
  double phi{0.0};

  Vec3 vec() const { return {psi, theta, phi}; }
  static EulerAngles from(const Vec3& v) { return {v[0], v[1], v[2]}; }
};

/// Scalar-first unit quaternion (q0, q1, q2, q3), q0 >= 0 not enforced here.
/// Construction admits inputs within kUnitQuatTol of unit norm and
/// renormalizes them exactly; anything further off throws NonUnitQuaternion.
class UnitQuaternion {
 public:
  UnitQuaternion() : c_(1.0, 0.0, 0.0, 0.0) {}

  static UnitQuaternion from(double q0, double q1, double q2, double q3) {
    return from(Vec4(q0, q1, q2, q3));
  }
  static UnitQuaternion from(const Vec4& coeffs) {
    const double n = coeffs.norm();
    if (!std::isfinite(n) || std::abs(n - 1.0) > kUnitQuatTol) {
      throw NonUnitQuaternion("quaternion norm " + std::to_string(n) +
                              " outside unit tolerance");
    }
    return UnitQuaternion(coeffs / n);
  }

  const Vec4& coeffs() const { return c_; }
  double q0() const { return c_[0]; }
  double q1() const { return c_[1]; }
  double q2() const { return c_[2]; }
  double q3() const { return c_[3]; }

  UnitQuaternion negated() const { return UnitQuaternion(-c_); }
  double dot(const UnitQuaternion& other) const { return c_.dot(other.c_); }

 private:
  explicit UnitQuaternion(const Vec4& c) : c_(c) {}
  Vec4 c_;
};

}  // namespace hynav
