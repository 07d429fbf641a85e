#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

namespace hynav {

/// Worst-case quadratic error-bound recursion state for one observer stage:
/// R is the current bound, lambda_bar the continuous-rate bound (largest
/// eigenvalue of the symmetric part of df/dx), D the input-disturbance bound
/// and N the measurement-noise bound.
struct ErrorBoundState {
  double R{0.0};
  double lambda_bar{0.0};
  double D{0.0};
  double N{0.0};
};

/// (e^(lambda dt) - 1) / lambda, evaluated by its limit dt when
/// |lambda| < 1e-9.
double growth_factor(double lambda_bar, double dt);

/// One step of the bound recursion for blend gain k in [0, 1):
///   R_new = |k| e^(lambda dt) R + |k| (D/lambda)(e^(lambda dt) - 1) + |k-1| N
double propagate_bound(const ErrorBoundState& state, double k, double dt);

struct OptimalGain {
  double k{};
  double F_min{};
  double k_max{};  // e^(-lambda_bar dt)
  double k_m{};    // min(k_max, 1 - 1e-9)
};

/// Minimum of the affine objective F(k) = (A + B - N) k + N over [0, k_m].
/// Ties (A + B = N) return k = 0.
OptimalGain optimal_gain_affine(double a, double b, double n, double k_m);

/// Per-interval optimal gain with A = e^(lambda dt) R and
/// B = (e^(lambda dt) - 1) D / lambda.
OptimalGain optimal_gain(const ErrorBoundState& state, double dt);

struct BoundStep {
  double t{};
  double R{};      // bound after the step (with the gain actually used)
  double k{};      // gain used
  double F_min{};  // optimal bound value for this interval
  double k_star{}; // optimal gain for this interval
};

/// Time-varying recursion with per-interval bounds D_i, N_i and spacings
/// dt_i. When gains is null, the per-step optimal gain is used; otherwise the
/// supplied gains drive R while k_star/F_min still report the optimum.
std::vector<BoundStep> propagate_bound_timevarying(
    double r0, double lambda_bar, const std::vector<double>& d_i,
    const std::vector<double>& n_i, const std::vector<double>& dt_i,
    const std::vector<double>* gains = nullptr);

/// Nonlinear-measurement bound:
///   R_new = sqrt(li) e^(lambda_i dt) R + sqrt(li) (D/lambda)(e^(lambda dt)-1)
///           + sqrt(lei) N
/// with li = lambda_bar_i and lei = lambda_bar_ei.
double nonlinear_bound(double r_old, double lambda_bar_i, double lambda_i,
                       double lambda_bar, double lambda_bar_ei, double d,
                       double n, double dt_i);

/// One candidate discrete update: its Jacobian-derived contraction factors
/// and its own noise bound.
struct CandidateMeasurement {
  double lambda_bar_i{};
  double lambda_bar_ei{};
  double N{};
};

/// Index of the candidate minimizing R_new (nonlinear_bound form); ties break
/// to the lowest index. Throws EmptyCandidates.
std::size_t select_measurement(const std::vector<CandidateMeasurement>& candidates,
                               double r_old, double lambda_i, double lambda_bar,
                               double d, double dt_i);

void write_bounds_csv(std::ostream& os, const std::vector<BoundStep>& steps);

}  // namespace hynav
