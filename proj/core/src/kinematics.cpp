#include "hynav/kinematics.hpp"

#include <algorithm>
#include <cmath>

namespace hynav {

Mat3 euler_rate_matrix(const EulerAngles& x) {
  const double cps = std::cos(x.psi), sps = std::sin(x.psi);
  const double cth = std::cos(x.theta), sth = std::sin(x.theta);
  Mat3 h;
  h << 1.0, 0.0, -sth,
       0.0, cps, cth * sps,
       0.0, -sps, cth * cps;
  return h;
}

Mat3 euler_rate_matrix_inverse(const EulerAngles& x, double eps) {
  const double cth = std::cos(x.theta);
  if (std::abs(cth) <= eps) {
    throw GimbalLock("euler_rate_matrix_inverse at cos(theta) = " +
                     std::to_string(cth));
  }
  const double cps = std::cos(x.psi), sps = std::sin(x.psi);
  const double tth = std::tan(x.theta);
  Mat3 hi;
  hi << 1.0, sps * tth, cps * tth,
        0.0, cps, -sps,
        0.0, sps / cth, cps / cth;
  return hi;
}

Mat3 dcm_from_euler(const EulerAngles& x) {
  const double cps = std::cos(x.psi), sps = std::sin(x.psi);
  const double cth = std::cos(x.theta), sth = std::sin(x.theta);
  const double cph = std::cos(x.phi), sph = std::sin(x.phi);
  Mat3 a;
  a << cth * cph, sps * sth * cph - cps * sph, cps * sth * cph + sps * sph,
       cth * sph, sps * sth * sph + cps * cph, cps * sth * sph - sps * cph,
       -sth, cth * sps, cth * cps;
  return a;
}

Mat3 dcm_from_quaternion(const UnitQuaternion& q) {
  const double q0 = q.q0(), q1 = q.q1(), q2 = q.q2(), q3 = q.q3();
  Mat3 a;
  a << q0 * q0 + q1 * q1 - q2 * q2 - q3 * q3, 2.0 * (q1 * q2 - q0 * q3),
       2.0 * (q1 * q3 + q0 * q2),
       2.0 * (q1 * q2 + q0 * q3), q0 * q0 - q1 * q1 + q2 * q2 - q3 * q3,
       2.0 * (q2 * q3 - q0 * q1),
       2.0 * (q1 * q3 - q0 * q2), 2.0 * (q2 * q3 + q0 * q1),
       q0 * q0 - q1 * q1 - q2 * q2 + q3 * q3;
  return a;
}

Mat4 quaternion_rate_matrix(const Vec3& w) {
  // qdot = 1/2 * Omega * q realizes q (x) (0, omega_body); the vector block
  // is -[omega]x so that A(q(t)) tracks A(x(t)) for body-measured rates.
  Mat4 om;
  om << 0.0, -w[0], -w[1], -w[2],
        w[0], 0.0, w[2], -w[1],
        w[1], -w[2], 0.0, w[0],
        w[2], w[1], -w[0], 0.0;
  return om;
}

Mat3 metric_factor(const EulerAngles& x, MetricVariant variant) {
  const Mat3 h = euler_rate_matrix(x);
  if (variant == MetricVariant::H) return h;
  return dcm_from_euler(x) * h;
}

namespace {

Vec4 quat_multiply(const Vec4& a, const Vec4& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

}  // namespace

UnitQuaternion euler_to_quaternion(const EulerAngles& x) {
  const Vec4 qx{std::cos(x.psi / 2), std::sin(x.psi / 2), 0.0, 0.0};
  const Vec4 qy{std::cos(x.theta / 2), 0.0, std::sin(x.theta / 2), 0.0};
  const Vec4 qz{std::cos(x.phi / 2), 0.0, 0.0, std::sin(x.phi / 2)};
  Vec4 q = quat_multiply(qz, quat_multiply(qy, qx));
  if (q[0] < 0.0) q = -q;
  return UnitQuaternion::from(q);
}

EulerAngles quaternion_to_euler(const UnitQuaternion& q, double eps) {
  const Mat3 a = dcm_from_quaternion(q);
  const double sth = std::clamp(-a(2, 0), -1.0, 1.0);
  const double theta = std::asin(sth);
  if (std::abs(std::cos(theta)) <= eps) {
    throw GimbalLock("quaternion_to_euler lands on the chart boundary");
  }
  return {std::atan2(a(2, 1), a(2, 2)), theta, std::atan2(a(1, 0), a(0, 0))};
}

}  // namespace hynav
