#include <doctest.h>

#include <cmath>

#include "hynav/kinematics.hpp"
#include "hynav/truth.hpp"
#include "golden_values.hpp"
#include "test_support.hpp"

using namespace hynav;
namespace ts = testing_support;

namespace {

VecX euler_state(const Vec3& x, const Vec3& v, const Vec3& r) {
  VecX s(9);
  s << x, v, r;
  return s;
}

}  // namespace

TEST_CASE("simulate_truth: zero signals hold the state") {
  const auto traj = simulate_truth(builtin_signals("zero"), Chart::Euler,
                                   euler_state({0.2, 0.1, -0.3}, Vec3::Zero(),
                                               {1, 2, 3}),
                                   0.0, 2.0, 1e-2, {});
  CHECK((traj.states.back() - traj.states.front()).norm() == 0.0);
}

TEST_CASE("simulate_truth: double integrator with constant acceleration") {
  SignalSpec s;
  s.omega = [](double) { return Vec3::Zero().eval(); };
  const Vec3 c{0.3, -0.2, 0.5};
  s.gamma = [c](double) { return c; };
  const auto traj = simulate_truth(s, Chart::Euler,
                                   euler_state(Vec3::Zero(), Vec3::Zero(),
                                               Vec3::Zero()),
                                   0.0, 2.0, 1e-3, {});
  const VecX& end = traj.states.back();
  CHECK((Vec3(end.segment<3>(3)) - 2.0 * c).norm() < 1e-12);
  CHECK((Vec3(end.segment<3>(6)) - 2.0 * c).norm() < 1e-12);
}

TEST_CASE("simulate_truth: golden regression on the built-in signals") {
  const auto traj = simulate_truth(
      builtin_signals("sinusoid"), Chart::Euler,
      euler_state({0.1, 0.1, 0.1}, {0.5, -0.4, 0.3}, {1, 1, 1}), 0.0, 20.0,
      1e-3, {});
  for (int k = 0; k < golden::kTruthSampleCount; ++k) {
    const double t = k * golden::kTruthSampleSpacing;
    // grid times are exact multiples of dt plus the exact horizon endpoint
    std::size_t row = 0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      if (std::abs(traj.times[i] - t) < 1e-12) row = i;
    }
    for (int c = 0; c < 9; ++c) {
      CHECK(std::abs(traj.states[row][c] - golden::kTruthSamples[k][c]) < 5e-9);
    }
  }
}

TEST_CASE("simulate_truth: gimbal exit raises") {
  const auto near_lock = euler_state({0.0, M_PI / 2 - 1e-7, 0.0}, Vec3::Zero(),
                                     Vec3::Zero());
  CHECK_THROWS_AS(simulate_truth(builtin_signals("sinusoid"), Chart::Euler,
                                 near_lock, 0.0, 1.0, 1e-3, {}),
                  GimbalLock);
}

TEST_CASE("chart consistency of truth over the full horizon") {
  const Vec3 x0{0.1, 0.1, 0.1}, v0{0.5, -0.4, 0.3}, r0{1, 1, 1};
  const auto te = simulate_truth(builtin_signals("sinusoid"), Chart::Euler,
                                 euler_state(x0, v0, r0), 0.0, 20.0, 1e-3, {});
  VecX q0(10);
  q0 << euler_to_quaternion(EulerAngles::from(x0)).coeffs(), v0, r0;
  const auto tq = simulate_truth(builtin_signals("sinusoid"), Chart::Quaternion,
                                 q0, 0.0, 20.0, 1e-3, {});
  REQUIRE(te.times.size() == tq.times.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < te.times.size(); i += 100) {
    const Mat3 ae = dcm_from_euler(EulerAngles::from(te.states[i].head<3>()));
    Vec4 q = tq.states[i].head<4>();
    q.normalize();
    const Mat3 aq = dcm_from_quaternion(UnitQuaternion::from(q));
    worst = std::max(worst, (ae - aq).norm());
    worst = std::max(worst,
                     (te.states[i].tail<6>() - tq.states[i].tail<6>()).norm());
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("range measurements") {
  const BeaconSet b = BeaconSet::circles();
  // coincident with beacon A at t = 0
  const auto y0 = range_measurements({1.0, 0.0, 0.0}, b, 0.0);
  CHECK(y0[0] == 0.0);

  // 3-4-5 triangle against a one-point beacon set
  BeaconSet simple = b;
  simple.points[0] = [](double) { return Vec3{3.0, 4.0, 0.0}; };
  CHECK(range_measurements(Vec3::Zero(), simple, 0.0)[0] == 5.0);

  const auto y = range_measurements({1.0, 1.0, 1.0}, b, 0.0);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(y[i] - golden::kRangesAtOrigin[i]) < 1e-12);
  }
}

TEST_CASE("range measurements are rigid-rotation invariant") {
  const BeaconSet b = BeaconSet::circles();
  for (int trial = 0; trial < 50; ++trial) {
    const Mat3 rot = dcm_from_euler(ts::random_euler(true));
    const Vec3 r = ts::random_vec3(5.0);
    const double t = ts::uniform(0.0, 10.0);
    BeaconSet rb;
    for (int i = 0; i < 4; ++i) {
      auto p = b.points[i];
      rb.points[i] = [p, rot](double tt) { return Vec3(rot * p(tt)); };
    }
    const auto y1 = range_measurements(r, b, t);
    const auto y2 = range_measurements(Vec3(rot * r), rb, t);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(y1[i] - y2[i]) < 1e-10);
  }
}

TEST_CASE("ball sampler stays inside the bound") {
  BallSampler s(7);
  for (int i = 0; i < 1000; ++i) {
    CHECK(s.sample(3, 0.01).norm() <= 0.01);
  }
  CHECK(BallSampler(7).sample(4, 0.0).norm() == 0.0);
}

TEST_CASE("emit_measurements: noiseless payloads equal truth") {
  const EventSchedule sched = EventSchedule::periodic(
      0.5, 0.0, 3.0, static_cast<int>(EventTag::Translation));
  const auto traj = simulate_truth(
      builtin_signals("sinusoid"), Chart::Euler,
      euler_state({0.1, 0.1, 0.1}, {0.5, -0.4, 0.3}, {1, 1, 1}), 0.0, 3.0,
      1e-3, sched);
  const auto events =
      emit_measurements(traj, TranslationMode::Positions, nullptr, {0, 0, 1});
  REQUIRE(events.size() == 6);
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& fix = std::get<PositionFix>(events[i].payload);
    CHECK((fix.r - Vec3(traj.event_states[i].segment<3>(6))).norm() == 0.0);
  }
}

TEST_CASE("emit_measurements: realized noise is clamped to the bound") {
  EventSchedule sched;
  for (int i = 1; i <= 1000; ++i) {
    sched.times.push_back(0.002 * i);
    sched.payloads.push_back(static_cast<int>(EventTag::Translation));
  }
  const auto traj = simulate_truth(
      builtin_signals("zero"), Chart::Euler,
      euler_state(Vec3::Zero(), Vec3::Zero(), Vec3::Zero()), 0.0, 2.0, 1e-3,
      sched);
  const auto events =
      emit_measurements(traj, TranslationMode::Positions, nullptr, {0, 0.01, 3});
  double max_n = 0.0;
  for (const auto& ev : events) {
    max_n = std::max(max_n, std::get<PositionFix>(ev.payload).r.norm());
  }
  CHECK(max_n <= 0.01);
  CHECK(max_n > 1e-4);  // the generator actually produces noise
}

TEST_CASE("emit_measurements: interleaved schedules merge in order") {
  const double horizon = 3.0;
  const EventSchedule merged = EventSchedule::merge(
      EventSchedule::periodic(0.5, 0.0, horizon,
                              static_cast<int>(EventTag::Attitude)),
      EventSchedule::periodic(0.7, 0.0, horizon,
                              static_cast<int>(EventTag::Translation)));
  const auto traj = simulate_truth(
      builtin_signals("sinusoid"), Chart::Euler,
      euler_state({0.1, 0.1, 0.1}, {0.5, -0.4, 0.3}, {1, 1, 1}), 0.0, horizon,
      1e-3, merged);
  const BeaconSet b = BeaconSet::circles();
  const auto events = emit_measurements(traj, TranslationMode::Ranges, &b, {0, 0, 1});
  REQUIRE(events.size() == 10);  // 6 attitude + 4 range fixes
  double prev = 0.0;
  int att = 0, rng_fixes = 0;
  for (const auto& ev : events) {
    CHECK(ev.t >= prev);
    prev = ev.t;
    if (std::holds_alternative<AttitudeEulerFix>(ev.payload)) ++att;
    if (std::holds_alternative<RangeFix>(ev.payload)) ++rng_fixes;
  }
  CHECK(att == 6);
  CHECK(rng_fixes == 4);
}
