#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <variant>
#include <vector>

#include "hynav/hybrid.hpp"
#include "hynav/types.hpp"

namespace hynav {

/// Analytic body turn rate omega(t) [rad/s] and inertial acceleration
/// gamma(t) [m/s^2] driving the system.
struct SignalSpec {
  std::function<Vec3(double)> omega;
  std::function<Vec3(double)> gamma;
};

/// Named signal sets: "sinusoid" (the built-in scenario drive) or "zero".
SignalSpec builtin_signals(const std::string& name);

/// Four time-parameterized reference points used by range measurements.
struct BeaconSet {
  std::array<std::function<Vec3(double)>, 4> points;

  std::array<Vec3, 4> at(double t) const {
    return {points[0](t), points[1](t), points[2](t), points[3](t)};
  }

  /// The built-in layout: four unit circles in three distinct planes, each
  /// traversed at `rate` rad/s starting at `phase`.
  static BeaconSet circles(double rate = 1.0, double phase = 0.0);
};

/// Schedule payload tags; attitude sorts before translation before velocity
/// when several fixes share an instant.
enum class EventTag : int { Attitude = 0, Translation = 1, Velocity = 2 };

struct AttitudeEulerFix { Vec3 angles; };
struct AttitudeQuatFix { Vec4 q; };
struct PositionFix { Vec3 r; };
struct VelocityFix { Vec3 v; };
struct RangeFix {
  std::array<double, 4> y;
  std::array<Vec3, 4> beacon_pos;  // beacon positions at the fix instant
};

struct MeasurementEvent {
  double t{};
  std::variant<AttitudeEulerFix, AttitudeQuatFix, PositionFix, VelocityFix, RangeFix> payload;
};

/// Bounded deterministic disturbances: ||d|| <= input_bound on the observer's
/// continuous stage and ||n|| <= noise_bound on every measurement payload.
struct DisturbanceSpec {
  double input_bound{0.0};  // D
  double noise_bound{0.0};  // N
  std::uint64_t seed{1};
};

/// Deterministic uniform sampler in the closed n-ball (rejection from the
/// cube, driven by mt19937_64 so realizations are reproducible bit-for-bit).
class BallSampler {
 public:
  explicit BallSampler(std::uint64_t seed) : rng_(seed) {}
  VecX sample(int dim, double radius);

 private:
  double next_unit();  // uniform in [-1, 1)
  std::mt19937_64 rng_;
};

struct TruthTrajectory {
  Chart chart{Chart::Euler};
  std::vector<double> times;          // integrator grid incl. event instants
  std::vector<VecX> states;           // 9 (euler) or 10 (quaternion) components
  std::vector<double> event_times;    // one entry per schedule event
  std::vector<int> event_payloads;
  std::vector<VecX> event_states;     // truth at each event instant
};

/// Integrates the system from analytic signals on [t0, t0+horizon], landing
/// exactly on every scheduled instant. Euler chart throws GimbalLock if the
/// trajectory exits |theta| < pi/2.
TruthTrajectory simulate_truth(const SignalSpec& signals, Chart chart,
                               const VecX& state0, double t0, double horizon,
                               double dt, const EventSchedule& schedule);

/// Euclidean distances from r to the four beacons at time t.
std::array<double, 4> range_measurements(const Vec3& r, const BeaconSet& beacons,
                                         double t);

/// Translation measurement selector for emit_measurements.
enum class TranslationMode { Positions, Ranges };

/// Maps the truth states captured at the scheduled instants to measurement
/// payloads with bounded deterministic noise. Payload tags follow
/// MeasurementKind (0 attitude, 1 translation, 2 velocity).
std::vector<MeasurementEvent> emit_measurements(const TruthTrajectory& truth,
                                                TranslationMode mode,
                                                const BeaconSet* beacons,
                                                const DisturbanceSpec& dist);

}  // namespace hynav
