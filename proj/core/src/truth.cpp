#include "hynav/truth.hpp"

#include <cmath>

#include "hynav/kinematics.hpp"

namespace hynav {

SignalSpec builtin_signals(const std::string& name) {
  if (name == "sinusoid") {
    SignalSpec s;
    s.omega = [](double t) -> Vec3 {
      return {(2.0 + std::sin(t)) / 3.0, (3.0 + std::cos(t)) / 5.0,
              (2.0 + std::sin(2.0 * t)) / 3.0};
    };
    s.gamma = [](double t) -> Vec3 {
      return {std::cos(2.0 * t), std::sin(t), (1.0 + 2.0 * std::sin(t)) / 3.0};
    };
    return s;
  }
  if (name == "zero") {
    SignalSpec s;
    s.omega = [](double) { return Vec3::Zero().eval(); };
    s.gamma = [](double) { return Vec3::Zero().eval(); };
    return s;
  }
  throw ConfigError("unknown signal set '" + name + "'");
}

BeaconSet BeaconSet::circles(double rate, double phase) {
  auto ang = [rate, phase](double t) { return rate * t + phase; };
  BeaconSet b;
  b.points[0] = [ang](double t) -> Vec3 {
    return {std::cos(ang(t)), std::sin(ang(t)), 0.0};
  };
  b.points[1] = [ang](double t) -> Vec3 {
    return {60.0 + std::cos(ang(t)), std::sin(ang(t)), 0.0};
  };
  b.points[2] = [ang](double t) -> Vec3 {
    return {60.0, 60.0 + std::cos(ang(t)), std::sin(ang(t))};
  };
  b.points[3] = [ang](double t) -> Vec3 {
    return {60.0 + std::cos(ang(t)), 60.0, 60.0 + std::sin(ang(t))};
  };
  return b;
}

double BallSampler::next_unit() {
  // 53 uniform bits -> [0,1) -> [-1,1); mt19937_64 sequences are pinned by
  // the standard, so realizations are identical across platforms.
  const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

VecX BallSampler::sample(int dim, double radius) {
  if (radius <= 0.0) return VecX::Zero(dim);
  VecX v(dim);
  while (true) {
    for (int i = 0; i < dim; ++i) v[i] = next_unit();
    if (v.squaredNorm() <= 1.0) break;
  }
  return radius * v;
}

TruthTrajectory simulate_truth(const SignalSpec& signals, Chart chart,
                               const VecX& state0, double t0, double horizon,
                               double dt, const EventSchedule& schedule) {
  const int n = chart == Chart::Euler ? 9 : 10;
  if (state0.size() != n) {
    throw ConfigError("truth state size does not match the chart");
  }
  VectorField field;
  if (chart == Chart::Euler) {
    field = [&signals](double t, const VecX& s) {
      const EulerAngles x{s[0], s[1], s[2]};
      VecX ds(9);
      ds.segment<3>(0) = euler_rate_matrix_inverse(x) * signals.omega(t);
      ds.segment<3>(3) = dcm_from_euler(x) * signals.gamma(t);
      ds.segment<3>(6) = s.segment<3>(3);
      return ds;
    };
  } else {
    field = [&signals](double t, const VecX& s) {
      const Vec4 q = s.segment<4>(0);
      VecX ds(10);
      ds.segment<4>(0) = 0.5 * quaternion_rate_matrix(signals.omega(t)) * q;
      ds.segment<3>(4) = dcm_from_quaternion(UnitQuaternion::from(q)) * signals.gamma(t);
      ds.segment<3>(7) = s.segment<3>(4);
      return ds;
    };
  }
  StepHook hook;
  if (chart == Chart::Quaternion) {
    hook = [](long step, double, VecX& s) {
      if ((step + 1) % 1000 == 0) s.segment<4>(0).normalize();
    };
  }
  // identity discrete map: events only pin the grid and capture truth states
  DiscreteMap identity = [](const EventContext&, const VecX& pre) { return pre; };
  HybridTrace trace = run_hybrid(field, identity, schedule, state0, t0,
                                 t0 + horizon, dt, {}, hook);
  TruthTrajectory out;
  out.chart = chart;
  out.times = std::move(trace.times);
  out.states = std::move(trace.states);
  for (const auto& ev : trace.events) {
    out.event_times.push_back(ev.t);
    out.event_payloads.push_back(ev.payload);
    out.event_states.push_back(ev.pre);
  }
  return out;
}

std::array<double, 4> range_measurements(const Vec3& r, const BeaconSet& beacons,
                                         double t) {
  const auto p = beacons.at(t);
  return {(r - p[0]).norm(), (r - p[1]).norm(), (r - p[2]).norm(),
          (r - p[3]).norm()};
}

namespace {

// Small body-frame rotation applied on the right: q * exp((0, n)/2).
Vec4 perturb_quaternion(const Vec4& q, const Vec3& n) {
  const double a = n.norm();
  Vec4 dq;
  if (a < 1e-300) {
    dq << 1.0, 0.0, 0.0, 0.0;
  } else {
    const Vec3 axis = n / a;
    dq << std::cos(a / 2), std::sin(a / 2) * axis[0], std::sin(a / 2) * axis[1],
        std::sin(a / 2) * axis[2];
  }
  Vec4 out;
  out << q[0] * dq[0] - q[1] * dq[1] - q[2] * dq[2] - q[3] * dq[3],
      q[0] * dq[1] + q[1] * dq[0] + q[2] * dq[3] - q[3] * dq[2],
      q[0] * dq[2] - q[1] * dq[3] + q[2] * dq[0] + q[3] * dq[1],
      q[0] * dq[3] + q[1] * dq[2] - q[2] * dq[1] + q[3] * dq[0];
  return out / out.norm();
}

}  // namespace

std::vector<MeasurementEvent> emit_measurements(const TruthTrajectory& truth,
                                                TranslationMode mode,
                                                const BeaconSet* beacons,
                                                const DisturbanceSpec& dist) {
  if (mode == TranslationMode::Ranges && beacons == nullptr) {
    throw ConfigError("range measurements require a beacon set");
  }
  BallSampler noise(dist.seed);
  const int att_n = truth.chart == Chart::Euler ? 3 : 4;
  std::vector<MeasurementEvent> events;
  events.reserve(truth.event_times.size());
  for (std::size_t i = 0; i < truth.event_times.size(); ++i) {
    const double t = truth.event_times[i];
    const VecX& s = truth.event_states[i];
    MeasurementEvent ev;
    ev.t = t;
    switch (static_cast<EventTag>(truth.event_payloads[i])) {
      case EventTag::Attitude: {
        const VecX n = noise.sample(3, dist.noise_bound);
        if (truth.chart == Chart::Euler) {
          ev.payload = AttitudeEulerFix{s.segment<3>(0) + Vec3(n)};
        } else {
          ev.payload = AttitudeQuatFix{perturb_quaternion(s.segment<4>(0), Vec3(n))};
        }
        break;
      }
      case EventTag::Translation: {
        const Vec3 r = s.segment<3>(att_n + 3);
        if (mode == TranslationMode::Positions) {
          const VecX n = noise.sample(3, dist.noise_bound);
          ev.payload = PositionFix{r + Vec3(n)};
        } else {
          auto y = range_measurements(r, *beacons, t);
          const VecX n = noise.sample(4, dist.noise_bound);
          for (int j = 0; j < 4; ++j) y[j] += n[j];
          ev.payload = RangeFix{y, beacons->at(t)};
        }
        break;
      }
      case EventTag::Velocity: {
        const VecX n = noise.sample(3, dist.noise_bound);
        ev.payload = VelocityFix{Vec3(s.segment<3>(att_n)) + Vec3(n)};
        break;
      }
    }
    events.push_back(std::move(ev));
  }
  return events;
}

}  // namespace hynav
