#pragma once

#include <string>
#include <vector>

#include "hynav/bounds.hpp"
#include "hynav/contraction.hpp"
#include "hynav/csv.hpp"
#include "hynav/scenario.hpp"
#include "hynav/truth.hpp"

namespace hynav {

struct StageErrors {
  double att{};
  double vel{};
  double pos{};
  double total() const { return std::sqrt(att * att + vel * vel + pos * pos); }
};

struct RunSummary {
  std::string scenario;
  Chart chart{Chart::Euler};
  StageErrors final_error;
  std::vector<double> event_times;
  std::vector<StageErrors> post_event_errors;  // one per event instant
  std::vector<double> event_error_ratios;      // total error, instant to instant
  double contraction_alpha{};
  bool contraction_satisfied{true};
  int skipped_singular_events{0};
  double wall_seconds{};

  std::string text() const;
};

struct RunArtifacts {
  RunSummary summary;
  CsvTable trace;                 // t, truth, estimate, error norms, event flag
  TruthTrajectory truth;
  HybridTrace estimate;
  std::vector<MeasurementEvent> measurements;
  ContractionReport contraction;  // attitude stage along the estimate
  std::vector<BoundStep> bounds;  // attitude-stage bound recursion (D/N > 0)
};

/// Runs the full three-stage pipeline for a certified scenario: truth
/// generation, measurement emission, hybrid observer execution, contraction
/// verification, and (when disturbances are enabled) the bound recursion.
RunArtifacts run_scenario(const ScenarioConfig& cfg);

/// Writes trace/summary/contraction/bounds/plot files into cfg.out_dir
/// (overridable via the HYNAV_OUTPUT_DIR environment variable).
void write_run_outputs(const ScenarioConfig& cfg, const RunArtifacts& artifacts);

/// Where write_run_outputs will place files for this config.
std::string resolve_output_dir(const ScenarioConfig& cfg);

}  // namespace hynav
