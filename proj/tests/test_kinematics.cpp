#include <doctest.h>

#include <cmath>

#include "hynav/hybrid.hpp"
#include "hynav/kinematics.hpp"
#include "golden_values.hpp"
#include "test_support.hpp"

using namespace hynav;
namespace ts = testing_support;

namespace {
const EulerAngles kXStar{0.3, 0.2, -0.1};
}

TEST_CASE("euler rate matrix") {
  CHECK((euler_rate_matrix({0, 0, 0}) - Mat3::Identity()).norm() == 0.0);

  const Mat3 h_lock = euler_rate_matrix({0, M_PI / 2, 0});
  CHECK(h_lock(0, 0) == 1.0);
  CHECK(h_lock(0, 1) == 0.0);
  CHECK(h_lock(0, 2) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(std::abs(h_lock.determinant()) < 1e-12);

  const Mat3 h = euler_rate_matrix(kXStar);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      CHECK(std::abs(h(r, c) - golden::kRateMatrixAtXStar[r * 3 + c]) < 1e-12);

  for (int i = 0; i < 200; ++i) {
    const EulerAngles x = ts::random_euler(true);
    CHECK(euler_rate_matrix(x).determinant() ==
          doctest::Approx(std::cos(x.theta)).epsilon(1e-12));
  }
}

TEST_CASE("euler rate matrix inverse") {
  CHECK((euler_rate_matrix_inverse({0, 0, 0}) - Mat3::Identity()).norm() < 1e-15);
  CHECK_THROWS_AS(euler_rate_matrix_inverse({0, M_PI / 2 - 1e-9, 0}), GimbalLock);

  const Mat3 prod = euler_rate_matrix(kXStar) * euler_rate_matrix_inverse(kXStar);
  CHECK((prod - Mat3::Identity()).norm() < 1e-10);

  for (int i = 0; i < 200; ++i) {
    const EulerAngles x = ts::random_euler();
    const Mat3 p = euler_rate_matrix(x) * euler_rate_matrix_inverse(x);
    CHECK((p - Mat3::Identity()).norm() < 1e-10);
  }
}

TEST_CASE("dcm from euler") {
  CHECK((dcm_from_euler({0, 0, 0}) - Mat3::Identity()).norm() == 0.0);

  const Mat3 a = dcm_from_euler(kXStar);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      CHECK(std::abs(a(r, c) - golden::kDcmAtXStar[r * 3 + c]) < 1e-12);

  for (int i = 0; i < 1000; ++i) {
    const Mat3 m = dcm_from_euler(ts::random_euler(true));
    CHECK((m.transpose() * m - Mat3::Identity()).norm() < 1e-10);
    CHECK(m.determinant() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("dcm from quaternion") {
  CHECK((dcm_from_quaternion(UnitQuaternion()) - Mat3::Identity()).norm() == 0.0);

  // single-axis pitch rotation matches the Euler route
  const double th = 0.4;
  const UnitQuaternion q =
      UnitQuaternion::from(std::cos(th / 2), 0.0, std::sin(th / 2), 0.0);
  CHECK((dcm_from_quaternion(q) - dcm_from_euler({0, th, 0})).norm() < 1e-12);

  for (int i = 0; i < 500; ++i) {
    const Mat3 m = dcm_from_quaternion(UnitQuaternion::from(ts::random_unit_quaternion()));
    CHECK((m.transpose() * m - Mat3::Identity()).norm() < 1e-10);
  }

  CHECK_THROWS_AS(dcm_from_quaternion(UnitQuaternion::from(1.0, 0.5, 0.0, 0.0)),
                  NonUnitQuaternion);
}

TEST_CASE("quaternion rate matrix") {
  CHECK(quaternion_rate_matrix(Vec3::Zero()).norm() == 0.0);

  const Mat4 om = quaternion_rate_matrix({1, 2, 3});
  CHECK(om(0, 0) == 0.0);
  CHECK(om(0, 1) == -1.0);
  CHECK(om(0, 2) == -2.0);
  CHECK(om(0, 3) == -3.0);

  for (int i = 0; i < 100; ++i) {
    const Mat4 m = quaternion_rate_matrix(ts::random_vec3(5.0));
    CHECK((m + m.transpose()).norm() == 0.0);
  }
}

TEST_CASE("metric factor") {
  CHECK((metric_factor({0, 0, 0}, MetricVariant::AH) - Mat3::Identity()).norm() == 0.0);
  CHECK((metric_factor({0, 0, 0}, MetricVariant::H) - Mat3::Identity()).norm() == 0.0);

  const Mat3 expect = dcm_from_euler(kXStar) * euler_rate_matrix(kXStar);
  CHECK((metric_factor(kXStar, MetricVariant::AH) - expect).norm() < 1e-14);

  for (int i = 0; i < 1000; ++i) {
    const EulerAngles x = ts::random_euler(true);
    const Mat3 ah = metric_factor(x, MetricVariant::AH);
    const Mat3 h = metric_factor(x, MetricVariant::H);
    CHECK((ah.transpose() * ah - h.transpose() * h).norm() < 1e-10);
  }
}

TEST_CASE("chart conversions") {
  const UnitQuaternion q0 = euler_to_quaternion({0, 0, 0});
  CHECK(q0.q0() == 1.0);
  CHECK(q0.coeffs().tail<3>().norm() == 0.0);

  const UnitQuaternion qs = euler_to_quaternion(kXStar);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(qs.coeffs()[i] - golden::kQuatAtXStar[i]) < 1e-12);
  }

  const EulerAngles back = quaternion_to_euler(qs);
  CHECK(std::abs(back.psi - kXStar.psi) < 1e-9);
  CHECK(std::abs(back.theta - kXStar.theta) < 1e-9);
  CHECK(std::abs(back.phi - kXStar.phi) < 1e-9);

  // double cover: -identity quaternion is the same rotation
  const EulerAngles z = quaternion_to_euler(UnitQuaternion::from(-1, 0, 0, 0));
  CHECK(std::abs(z.psi) == 0.0);
  CHECK(std::abs(z.theta) == 0.0);
  CHECK(std::abs(z.phi) == 0.0);

  for (int i = 0; i < 500; ++i) {
    const EulerAngles x = ts::random_euler();
    const UnitQuaternion q = euler_to_quaternion(x);
    CHECK(q.q0() >= 0.0);  // canonical hemisphere
    CHECK((dcm_from_quaternion(q) - dcm_from_euler(x)).norm() < 1e-9);
  }
}

TEST_CASE("quaternion norm drift under propagation") {
  // qdot = 1/2 Omega q preserves the norm analytically; integrate 10 s with
  // the built-in rates and check the drift before any renormalization.
  VectorField f = [](double t, const VecX& q) {
    const Vec3 w{(2 + std::sin(t)) / 3, (3 + std::cos(t)) / 5,
                 (2 + std::sin(2 * t)) / 3};
    return VecX(0.5 * quaternion_rate_matrix(w) * Vec4(q));
  };
  VecX q0(4);
  q0 << 1, 0, 0, 0;
  const auto res = propagate(f, q0, 0.0, 10.0, 1e-3);
  CHECK(std::abs(res.state.norm() - 1.0) < 1e-8);
}
