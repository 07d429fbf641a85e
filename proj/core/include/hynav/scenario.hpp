#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hynav/hybrid.hpp"
#include "hynav/kinematics.hpp"
#include "hynav/truth.hpp"
#include "hynav/types.hpp"

namespace hynav {

/// Periodic schedule or an explicit list of instants.
struct ScheduleSpec {
  double period{0.0};
  std::vector<double> explicit_times;

  bool enabled() const { return period > 0.0 || !explicit_times.empty(); }
  EventSchedule build(double t0, double horizon, int payload) const;
};

/// Full scenario: built from a file (line-based `key = value` under
/// [section] headers; see the README for the schema) or a built-in.
struct ScenarioConfig {
  std::string name{"unnamed"};

  // [run]
  Chart chart{Chart::Euler};
  double dt{1e-3};
  double horizon{20.0};
  std::uint64_t seed{1};

  // [truth] (x0 is an Euler triple in both charts; converted as needed)
  std::string signal_set{"sinusoid"};
  Vec3 x0{0.1, 0.1, 0.1};
  Vec3 v0{0.5, -0.4, 0.3};
  Vec3 r0{1.0, 1.0, 1.0};

  // [beacons]
  double beacon_rate{1.0};
  double beacon_phase{0.0};

  // [attitude]
  ScheduleSpec attitude_schedule{0.5, {}};
  double attitude_gain{1.0 / 3.0};
  std::optional<MatX> attitude_gain_matrix;
  MetricVariant metric{MetricVariant::AH};
  Vec3 xhat0{0.098, 0.098, 0.098};

  // [translation]
  TranslationMode translation{TranslationMode::Ranges};
  ScheduleSpec translation_schedule{0.5, {}};
  double position_gain{2.0 / 3.0};  // k_i for ranges, F3 = k I for positions
  std::optional<MatX> position_gain_matrix;
  Vec3 rhat0{0.0, 0.0, 0.0};

  // [velocity] (direct fixes; disabled unless a schedule is given)
  ScheduleSpec velocity_schedule{0.0, {}};
  double velocity_gain{0.5};  // F2 = k I
  std::optional<MatX> velocity_gain_matrix;
  Vec3 vhat0{0.0, 0.0, 0.0};

  // [disturbance]
  double input_bound{0.0};  // D
  double noise_bound{0.0};  // N

  // [output]
  std::string out_dir{"out"};
  std::string trace_csv{"trace.csv"};
  std::string summary_txt{"summary.txt"};
  std::string contraction_csv{"contraction.csv"};
  std::string bounds_csv{"bounds.csv"};
  std::string plot_svg{"plot.svg"};
  int contraction_samples{8};
  double sample_dt{0.01};  // trace-CSV output grid, independent of run.dt
};

/// Parses a scenario file. Throws ConfigError on malformed input.
ScenarioConfig load_scenario_file(const std::string& path);

/// Named built-ins (`paper-sec4` and variants). Throws ConfigError.
ScenarioConfig builtin_scenario(const std::string& name);
std::vector<std::string> builtin_scenario_names();

/// Serializes a config back to the file format (used by list-scenarios).
std::string scenario_to_text(const ScenarioConfig& cfg);

/// Validates gains (contraction certificates) and schedules; throws
/// UncertifiedGain or ConfigError. Called by run_scenario at load time.
void certify_scenario(const ScenarioConfig& cfg);

}  // namespace hynav
