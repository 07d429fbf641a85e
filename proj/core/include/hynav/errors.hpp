#pragma once

#include <stdexcept>
#include <string>

namespace hynav {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Euler-rate matrix inversion requested at |cos theta| below the gimbal floor,
// or a conversion landed in a singular Euler configuration.
struct GimbalLock : Error {
  using Error::Error;
};

struct NonUnitQuaternion : Error {
  using Error::Error;
};

// A discrete-update gain failed its contraction certificate.
struct UncertifiedGain : Error {
  using Error::Error;
};

// Beacon-difference matrix singular (coplanar beacons).
struct SingularBeaconGeometry : Error {
  using Error::Error;
};

// Velocity update requested with no open fix interval / accumulator.
struct MissingAccumulator : Error {
  using Error::Error;
};

struct NonFiniteState : Error {
  using Error::Error;
};

struct SingularMetric : Error {
  using Error::Error;
};

struct EmptyCandidates : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct SchemaMismatch : Error {
  using Error::Error;
};

}  // namespace hynav
