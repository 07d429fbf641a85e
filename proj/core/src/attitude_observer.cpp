#include "hynav/attitude_observer.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace hynav {

GainCertificate certify_attitude_gain(const AttitudeGain& gain,
                                      const MatX* theta_i, double commute_tol) {
  GainCertificate cert;
  if (gain.is_scalar()) {
    cert.lambda_bar = gain.k() * gain.k();
    cert.commutator_norm = 0.0;
    cert.commutes = true;
  } else {
    const MatX& f = gain.F();
    Eigen::SelfAdjointEigenSolver<MatX> es(f.transpose() * f);
    cert.lambda_bar = es.eigenvalues().maxCoeff();
    if (theta_i != nullptr) {
      cert.commutator_norm = (*theta_i * f - f * *theta_i).norm();
      cert.commutes = cert.commutator_norm < commute_tol;
    }
  }
  cert.certified = cert.lambda_bar < 1.0 && cert.commutes;
  return cert;
}

Vec3 attitude_continuous_field(const EulerAngles& xhat, const Vec3& omega) {
  return euler_rate_matrix_inverse(xhat) * omega;
}

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Nearest 2*pi representative of m relative to ref.
double unwrap_to(double ref, double m) {
  return m + kTwoPi * std::round((ref - m) / kTwoPi);
}

void require_certified(const GainCertificate& cert) {
  if (!cert.certified) {
    throw UncertifiedGain("attitude gain rejected: lambda_bar = " +
                          std::to_string(cert.lambda_bar) +
                          (cert.commutes ? "" : ", metric commutation failed"));
  }
}

}  // namespace

EulerAngles attitude_discrete_update(const EulerAngles& pre,
                                     const EulerAngles& meas,
                                     const AttitudeGain& gain,
                                     const Mat3* theta_i) {
  MatX theta;
  const MatX* theta_ptr = nullptr;
  if (theta_i != nullptr) {
    theta = *theta_i;
    theta_ptr = &theta;
  }
  require_certified(certify_attitude_gain(gain, theta_ptr));

  const Vec3 p = pre.vec();
  Vec3 m{unwrap_to(p[0], meas.psi), unwrap_to(p[1], meas.theta),
         unwrap_to(p[2], meas.phi)};
  Vec3 post;
  if (gain.is_scalar()) {
    post = gain.k() * p + (1.0 - gain.k()) * m;
  } else {
    post = gain.F() * p + (Mat3::Identity() - Mat3(gain.F())) * m;
  }
  return EulerAngles::from(post);
}

UnitQuaternion quaternion_discrete_update(const UnitQuaternion& pre,
                                          const UnitQuaternion& meas,
                                          const AttitudeGain& gain) {
  require_certified(certify_attitude_gain(gain));

  Vec4 qm = meas.coeffs();
  if (pre.coeffs().dot(qm) < 0.0) qm = -qm;  // double cover
  Vec4 blended;
  if (gain.is_scalar()) {
    blended = gain.k() * pre.coeffs() + (1.0 - gain.k()) * qm;
  } else {
    blended = gain.F() * pre.coeffs() + (Mat4::Identity() - Mat4(gain.F())) * qm;
  }
  const double n = blended.norm();
  if (n < 1e-12) {
    throw NonUnitQuaternion("quaternion blend collapsed to zero");
  }
  return UnitQuaternion::from(blended / n);
}

}  // namespace hynav
