#include "hynav/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "hynav/errors.hpp"

namespace hynav {

namespace {
constexpr double kLambdaZeroTol = 1e-9;
constexpr double kStrictGainCap = 1.0 - 1e-9;
}  // namespace

double growth_factor(double lambda_bar, double dt) {
  if (std::abs(lambda_bar) < kLambdaZeroTol) return dt;
  return (std::exp(lambda_bar * dt) - 1.0) / lambda_bar;
}

double propagate_bound(const ErrorBoundState& s, double k, double dt) {
  return std::abs(k) * std::exp(s.lambda_bar * dt) * s.R +
         std::abs(k) * s.D * growth_factor(s.lambda_bar, dt) +
         std::abs(k - 1.0) * s.N;
}

OptimalGain optimal_gain_affine(double a, double b, double n, double k_m) {
  OptimalGain out;
  out.k_m = k_m;
  const double slope = a + b - n;
  if (slope > 0.0) {
    out.k = 0.0;
    out.F_min = n;
  } else if (slope < 0.0) {
    out.k = k_m;
    out.F_min = slope * k_m + n;
  } else {
    out.k = 0.0;  // indifferent: prefer the fresh measurement
    out.F_min = n;
  }
  return out;
}

OptimalGain optimal_gain(const ErrorBoundState& s, double dt) {
  const double a = std::exp(s.lambda_bar * dt) * s.R;
  const double b = s.D * growth_factor(s.lambda_bar, dt);
  const double k_max = std::exp(-s.lambda_bar * dt);
  const double k_m = std::min(k_max, kStrictGainCap);
  OptimalGain out = optimal_gain_affine(a, b, s.N, k_m);
  out.k_max = k_max;
  return out;
}

std::vector<BoundStep> propagate_bound_timevarying(
    double r0, double lambda_bar, const std::vector<double>& d_i,
    const std::vector<double>& n_i, const std::vector<double>& dt_i,
    const std::vector<double>* gains) {
  const std::size_t n = dt_i.size();
  if (d_i.size() != n || n_i.size() != n || (gains && gains->size() != n)) {
    throw ConfigError("time-varying bound sequences must have equal length");
  }
  std::vector<BoundStep> steps;
  steps.reserve(n);
  double r = r0;
  double t = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    t += dt_i[i];
    ErrorBoundState s{r, lambda_bar, d_i[i], n_i[i]};
    const OptimalGain opt = optimal_gain(s, dt_i[i]);
    const double k = gains ? (*gains)[i] : opt.k;
    r = propagate_bound(s, k, dt_i[i]);
    steps.push_back({t, r, k, opt.F_min, opt.k});
  }
  return steps;
}

double nonlinear_bound(double r_old, double lambda_bar_i, double lambda_i,
                       double lambda_bar, double lambda_bar_ei, double d,
                       double n, double dt_i) {
  const double sli = std::sqrt(lambda_bar_i);
  return sli * std::exp(lambda_i * dt_i) * r_old +
         sli * d * growth_factor(lambda_bar, dt_i) +
         std::sqrt(lambda_bar_ei) * n;
}

std::size_t select_measurement(const std::vector<CandidateMeasurement>& candidates,
                               double r_old, double lambda_i, double lambda_bar,
                               double d, double dt_i) {
  if (candidates.empty()) {
    throw EmptyCandidates("no candidate measurements to select from");
  }
  std::size_t best = 0;
  double best_r = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& c = candidates[i];
    const double r = nonlinear_bound(r_old, c.lambda_bar_i, lambda_i, lambda_bar,
                                     c.lambda_bar_ei, d, c.N, dt_i);
    if (r < best_r) {
      best_r = r;
      best = i;
    }
  }
  return best;
}

void write_bounds_csv(std::ostream& os, const std::vector<BoundStep>& steps) {
  os << "t,R,k,F_min,k_star\n";
  char line[192];
  for (const auto& s : steps) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t,
                  s.R, s.k, s.F_min, s.k_star);
    os << line;
  }
}

}  // namespace hynav
