#pragma once

#include "hynav/types.hpp"

namespace hynav {

// Attitude kinematics for the strapdown state. Conventions implemented here
// (and used consistently by truth generation and the observers):
//   - body->inertial rotation A = Rz(phi) * Ry(theta) * Rx(psi),
//   - body rates omega = H(x) * xdot, so xdot = H^-1(x) * omega,
//   - quaternion q is body->inertial, scalar first, qdot = 1/2 * Omega(omega) * q
//     with omega expressed in body axes.

/// H(x): maps Euler-angle rates to body rates. Always defined; singular at
/// cos(theta) = 0.
Mat3 euler_rate_matrix(const EulerAngles& x);

/// H^-1(x). Throws GimbalLock when |cos theta| <= eps.
Mat3 euler_rate_matrix_inverse(const EulerAngles& x, double eps = kGimbalEps);

/// Direction cosine matrix A(x), body->inertial rotation.
Mat3 dcm_from_euler(const EulerAngles& x);

/// A(q) for a unit quaternion; equals dcm_from_euler under chart conversion.
Mat3 dcm_from_quaternion(const UnitQuaternion& q);

/// Omega(omega): skew-symmetric 4x4 quaternion rate matrix, qdot = 1/2 Omega q.
Mat4 quaternion_rate_matrix(const Vec3& omega);

enum class MetricVariant { AH, H };

/// Contraction-metric factor Theta(x) = A(x)H(x) or H(x).
Mat3 metric_factor(const EulerAngles& x, MetricVariant variant);

/// Chart conversions. euler_to_quaternion canonicalizes q0 >= 0;
/// quaternion_to_euler uses the principal branch theta = asin(-A31) and
/// throws GimbalLock if the result sits on the chart boundary.
UnitQuaternion euler_to_quaternion(const EulerAngles& x);
EulerAngles quaternion_to_euler(const UnitQuaternion& q, double eps = kGimbalEps);

}  // namespace hynav
