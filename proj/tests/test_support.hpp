#pragma once

#include <random>

#include "hynav/types.hpp"

namespace testing_support {

using hynav::EulerAngles;
using hynav::Mat3;
using hynav::Vec3;
using hynav::Vec4;

inline std::mt19937& rng() {
  static std::mt19937 gen(20240817u);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

// Any attitude (theta clear of the chart boundary unless full=true).
inline EulerAngles random_euler(bool full = false) {
  const double cap = full ? 1.57 : 1.3;
  return {uniform(-3.1, 3.1), uniform(-cap, cap), uniform(-3.1, 3.1)};
}

inline Vec3 random_vec3(double scale = 1.0) {
  return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)};
}

inline Vec4 random_unit_quaternion() {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec4 q{n(rng()), n(rng()), n(rng()), n(rng())};
  return q / q.norm();
}

}  // namespace testing_support
