#include "hynav/hybrid.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace hynav {

void EventSchedule::validate(double t0, double t_end) const {
  if (!payloads.empty() && payloads.size() != times.size()) {
    throw ConfigError("schedule payload list length mismatch");
  }
  double prev = t0;
  for (double t : times) {
    if (!(t > prev)) {
      throw ConfigError("schedule times must be strictly increasing and > t0");
    }
    if (t > t_end + 1e-12) {
      throw ConfigError("schedule time " + std::to_string(t) + " beyond horizon");
    }
    prev = t;
  }
}

double EventSchedule::min_spacing(double t0) const {
  double m = std::numeric_limits<double>::infinity();
  double prev = t0;
  for (double t : times) {
    m = std::min(m, t - prev);
    prev = t;
  }
  return m;
}

double EventSchedule::max_spacing(double t0) const {
  double m = 0.0;
  double prev = t0;
  for (double t : times) {
    m = std::max(m, t - prev);
    prev = t;
  }
  return m;
}

EventSchedule EventSchedule::periodic(double period, double t0, double t_end, int payload) {
  if (!(period > 0.0)) throw ConfigError("schedule period must be > 0");
  EventSchedule s;
  for (long i = 1;; ++i) {
    const double t = t0 + static_cast<double>(i) * period;
    if (t > t_end + 1e-12) break;
    s.times.push_back(std::min(t, t_end));
    s.payloads.push_back(payload);
  }
  return s;
}

EventSchedule EventSchedule::merge(const EventSchedule& a, const EventSchedule& b) {
  EventSchedule out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    const bool take_a =
        j >= b.size() ||
        (i < a.size() && (a.times[i] < b.times[j] ||
                          (a.times[i] == b.times[j] && a.payload(i) <= b.payload(j))));
    if (take_a) {
      out.times.push_back(a.times[i]);
      out.payloads.push_back(a.payload(i));
      ++i;
    } else {
      out.times.push_back(b.times[j]);
      out.payloads.push_back(b.payload(j));
      ++j;
    }
  }
  return out;
}

namespace {

// One RK4 step plus trapezoid accumulation of the registered integrands.
void rk4_step(const VectorField& f, double t, double h, VecX& x,
              const std::vector<Integrand>& integrands, std::vector<VecX>& acc) {
  std::vector<VecX> pre_vals;
  pre_vals.reserve(integrands.size());
  for (const auto& g : integrands) pre_vals.push_back(g(t, x));

  const VecX k1 = f(t, x);
  const VecX k2 = f(t + h / 2, x + (h / 2) * k1);
  const VecX k3 = f(t + h / 2, x + (h / 2) * k2);
  const VecX k4 = f(t + h, x + h * k3);
  x += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

  if (!x.allFinite()) {
    throw NonFiniteState("state became non-finite at t = " + std::to_string(t + h));
  }
  for (std::size_t i = 0; i < integrands.size(); ++i) {
    acc[i] += (h / 2) * (pre_vals[i] + integrands[i](t + h, x));
  }
}

// Shared stepping loop. Step starts sit on the grid t0 + i*dt; the final step
// is shortened (never lengthened past t1) and the end time is assigned t1
// exactly. record(t, x) is called after each step (and the hook before it).
template <typename Record>
long step_segment(const VectorField& f, VecX& x, double t0, double t1, double dt,
                  const std::vector<Integrand>& integrands, std::vector<VecX>& acc,
                  const StepHook& hook, long step_offset, Record&& record) {
  if (!(t1 > t0)) {
    if (t1 == t0) return 0;
    throw ConfigError("propagate requires t1 >= t0");
  }
  if (!(dt > 0.0)) throw ConfigError("propagate requires dt > 0");

  const double span = t1 - t0;
  long n = static_cast<long>(std::ceil(span / dt - 1e-9));
  if (n < 1) n = 1;
  for (long i = 0; i < n; ++i) {
    const double ta = t0 + static_cast<double>(i) * dt;
    double tb = (i == n - 1) ? t1 : t0 + static_cast<double>(i + 1) * dt;
    if (tb > t1) tb = t1;
    rk4_step(f, ta, tb - ta, x, integrands, acc);
    if (hook) hook(step_offset + i, tb, x);
    record(tb, x);
  }
  return n;
}

}  // namespace

PropagateResult propagate(const VectorField& f, VecX state, double t0, double t1,
                          double dt, const std::vector<Integrand>& integrands,
                          const StepHook& hook, long step_offset) {
  PropagateResult out;
  out.integrals.resize(integrands.size());
  for (std::size_t i = 0; i < integrands.size(); ++i) {
    out.integrals[i] = VecX::Zero(integrands[i](t0, state).size());
  }
  out.state = std::move(state);
  out.steps = step_segment(f, out.state, t0, t1, dt, integrands, out.integrals,
                           hook, step_offset, [](double, const VecX&) {});
  return out;
}

HybridTrace run_hybrid(const VectorField& f, const DiscreteMap& map,
                       const EventSchedule& schedule, VecX state0, double t0,
                       double t_end, double dt,
                       const std::vector<Integrand>& integrands,
                       const StepHook& hook) {
  schedule.validate(t0, t_end);

  HybridTrace trace;
  trace.times.push_back(t0);
  trace.states.push_back(state0);

  std::vector<VecX> acc(integrands.size());
  for (std::size_t i = 0; i < integrands.size(); ++i) {
    acc[i] = VecX::Zero(integrands[i](t0, state0).size());
  }

  VecX x = std::move(state0);
  double t = t0;
  long steps = 0;
  auto record = [&trace](double tr, const VecX& xr) {
    trace.times.push_back(tr);
    trace.states.push_back(xr);
  };

  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const double te = schedule.times[i];
    if (te > t) {
      steps += step_segment(f, x, t, te, dt, integrands, acc, hook, steps, record);
      t = te;
    }
    EventRecord rec;
    rec.index = static_cast<int>(i);
    rec.payload = schedule.payload(i);
    rec.t = te;
    rec.pre = x;
    EventContext ctx{rec.index, rec.payload, te, acc};
    x = map(ctx, x);
    if (!x.allFinite()) {
      throw NonFiniteState("discrete update produced non-finite state at t = " +
                           std::to_string(te));
    }
    rec.post = x;
    trace.events.push_back(std::move(rec));
    trace.times.push_back(te);
    trace.states.push_back(x);
  }
  if (t_end > t) {
    step_segment(f, x, t, t_end, dt, integrands, acc, hook, steps, record);
  }
  return trace;
}

}  // namespace hynav
