#include "hynav/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace hynav {

double lambda_max_sym(const MatX& s) {
  Eigen::SelfAdjointEigenSolver<MatX> es(s);
  return es.eigenvalues().maxCoeff();
}

namespace {

MatX inverse_checked(const MatX& m, double* condition = nullptr) {
  Eigen::FullPivLU<MatX> lu(m);
  Eigen::JacobiSVD<MatX> svd(m);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (!(smin > 1e-12 * std::max(smax, 1.0))) {
    throw SingularMetric("metric factor is numerically singular");
  }
  if (condition != nullptr) *condition = smax / smin;
  return lu.inverse();
}

MatX field_jacobian_fd(const VectorField& f, const VecX& x, double t, double rel) {
  const VecX fx = f(t, x);
  MatX j(fx.size(), x.size());
  for (int c = 0; c < x.size(); ++c) {
    const double h = rel * std::max(1.0, std::abs(x[c]));
    VecX xp = x, xm = x;
    xp[c] += h;
    xm[c] -= h;
    j.col(c) = (f(t, xp) - f(t, xm)) / (2.0 * h);
  }
  return j;
}

// Total derivative of Theta along the flow, by central differences with a
// midpoint advance of the state.
MatX theta_dot_fd(const MetricSpec& m, const VectorField& f, const VecX& x,
                  double t) {
  const double h = m.fd_step;
  auto advance = [&](double dt) {
    const VecX k1 = f(t, x);
    return VecX(x + dt * f(t + dt / 2, x + (dt / 2) * k1));
  };
  const MatX tp = m.theta(advance(h), t + h);
  const MatX tm = m.theta(advance(-h), t - h);
  return (tp - tm) / (2.0 * h);
}

}  // namespace

MatX generalized_jacobian(const VectorField& f, const MetricSpec& metric,
                          const VecX& x, double t) {
  const MatX theta = metric.theta(x, t);
  const MatX theta_inv = inverse_checked(theta);
  const MatX dtheta =
      metric.theta_dot ? metric.theta_dot(x, t) : theta_dot_fd(metric, f, x, t);
  const MatX dfdx = field_jacobian_fd(f, x, t, metric.fd_step);
  return (dtheta + theta * dfdx) * theta_inv;
}

double discrete_contraction_factor(const MatX& g, const MatX& theta_i,
                                   const MatX& theta_ip1) {
  const MatX fi = theta_ip1 * g * inverse_checked(theta_i);
  return lambda_max_sym(fi.transpose() * fi);
}

ContractionReport verify_hybrid_condition(const HybridTrace& trace,
                                          const VectorField& f,
                                          const std::vector<MatX>& event_jacobians,
                                          const MetricSpec& metric,
                                          int samples_per_interval) {
  if (event_jacobians.size() != trace.events.size()) {
    throw ConfigError("one map Jacobian required per recorded event");
  }
  ContractionReport report;
  report.alpha = 0.0;
  report.max_theta_condition = 1.0;

  // sample index lookup: states recorded at trace.times
  auto state_at = [&trace](double t) -> const VecX& {
    const auto it = std::lower_bound(trace.times.begin(), trace.times.end(), t);
    std::size_t idx =
        it == trace.times.end()
            ? trace.times.size() - 1
            : static_cast<std::size_t>(std::distance(trace.times.begin(), it));
    return trace.states[idx];
  };

  double t_prev = trace.times.front();
  for (std::size_t e = 0; e < trace.events.size(); ++e) {
    const auto& ev = trace.events[e];
    IntervalReport ir;
    ir.event_index = static_cast<int>(e);
    ir.t_begin = t_prev;
    ir.t_end = ev.t;
    ir.dt = ev.t - t_prev;

    double lam = -std::numeric_limits<double>::infinity();
    const int ns = std::max(1, samples_per_interval);
    for (int s = 0; s < ns; ++s) {
      // sample strictly inside the interval
      const double tau =
          ir.t_begin + (ir.dt) * (static_cast<double>(s) + 0.5) / ns;
      const VecX& xs = state_at(tau);
      double cond = 1.0;
      const MatX theta = metric.theta(xs, tau);
      inverse_checked(theta, &cond);
      report.max_theta_condition = std::max(report.max_theta_condition, cond);
      const MatX fj = generalized_jacobian(f, metric, xs, tau);
      lam = std::max(lam, lambda_max_sym(fj + fj.transpose()));
    }
    ir.lambda_cont = lam;

    const MatX theta_minus = metric.theta(ev.pre, ev.t);
    const MatX theta_plus = metric.theta(ev.post, ev.t);
    ir.lambda_i = discrete_contraction_factor(event_jacobians[e], theta_minus,
                                              theta_plus);
    ir.product = ir.lambda_i * std::exp(ir.lambda_cont * ir.dt);
    ir.flagged = !(ir.product < 1.0);
    report.alpha = std::max(report.alpha, ir.product);
    report.intervals.push_back(ir);
    t_prev = ev.t;
  }
  report.satisfied = !report.intervals.empty() && report.alpha < 1.0;
  if (report.intervals.empty()) report.satisfied = true;
  return report;
}

std::string ContractionReport::table() const {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof(line), "%4s %10s %10s %12s %12s %12s %8s\n", "i",
                "t_begin", "t_end", "lambda_cont", "lambda_i", "product", "flag");
  os << line;
  for (const auto& ir : intervals) {
    std::snprintf(line, sizeof(line),
                  "%4d %10.4f %10.4f %12.4e %12.4e %12.4e %8s\n", ir.event_index,
                  ir.t_begin, ir.t_end, ir.lambda_cont, ir.lambda_i, ir.product,
                  ir.flagged ? "VIOLATED" : "ok");
    os << line;
  }
  std::snprintf(line, sizeof(line),
                "alpha = %.6e  (%s), max cond(Theta) = %.3e, margin = %.3e\n",
                alpha, satisfied ? "hybrid condition satisfied" : "VIOLATED",
                max_theta_condition, 1.0 - alpha);
  os << line;
  return os.str();
}

void ContractionReport::write_csv(std::ostream& os) const {
  os << "event,t_begin,t_end,dt,lambda_cont,lambda_i,product,flagged\n";
  char line[256];
  for (const auto& ir : intervals) {
    std::snprintf(line, sizeof(line), "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                  ir.event_index, ir.t_begin, ir.t_end, ir.dt, ir.lambda_cont,
                  ir.lambda_i, ir.product, ir.flagged ? 1 : 0);
    os << line;
  }
}

}  // namespace hynav
