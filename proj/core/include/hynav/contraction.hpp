#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "hynav/hybrid.hpp"
#include "hynav/types.hpp"

namespace hynav {

/// Evaluable metric factor Theta(x, t). When theta_dot is not registered the
/// total time derivative along the flow is taken by central differences
/// (step fd_step), with x(t +/- h) advanced by a midpoint step of the field.
struct MetricSpec {
  std::function<MatX(const VecX&, double)> theta;
  std::function<MatX(const VecX&, double)> theta_dot;  // optional analytic
  double fd_step{1e-6};
};

/// Largest eigenvalue of a symmetric matrix.
double lambda_max_sym(const MatX& s);

/// Generalized Jacobian F = (Theta_dot + Theta * df/dx) * Theta^-1 with
/// df/dx by relative-scaled central differences. Throws SingularMetric.
MatX generalized_jacobian(const VectorField& f, const MetricSpec& metric,
                          const VecX& x, double t);

/// lambda_max(Fi^T Fi) for the discrete map Jacobian G, with
/// Fi = Theta_ip1 * G * Theta_i^-1.
double discrete_contraction_factor(const MatX& g, const MatX& theta_i,
                                   const MatX& theta_ip1);

struct IntervalReport {
  int event_index{};
  double t_begin{}, t_end{};
  double dt{};
  double lambda_cont{};   // sup over samples of lambda_max(F + F^T)
  double lambda_i{};      // discrete factor at the closing event
  double product{};       // lambda_i * exp(lambda_cont * dt)
  bool flagged{};         // product >= 1
};

struct ContractionReport {
  std::vector<IntervalReport> intervals;
  double alpha{};              // sup of products
  bool satisfied{};            // alpha < 1 over the whole trace
  double max_theta_condition{};

  std::string table() const;
  void write_csv(std::ostream& os) const;
};

/// Checks the hybrid switching condition along a recorded trace: for every
/// inter-event interval, the product lambda_i * exp(lambda_cont * dt) must
/// stay below 1. event_jacobians supplies the discrete-map Jacobian G_i per
/// event (state-space, before the metric transform).
ContractionReport verify_hybrid_condition(const HybridTrace& trace,
                                          const VectorField& f,
                                          const std::vector<MatX>& event_jacobians,
                                          const MetricSpec& metric,
                                          int samples_per_interval = 16);

}  // namespace hynav
