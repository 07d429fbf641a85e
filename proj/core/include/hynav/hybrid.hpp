#pragma once

#include <functional>
#include <vector>

#include "hynav/types.hpp"

namespace hynav {

using VectorField = std::function<VecX(double t, const VecX& x)>;

// Running integral registered with the integrator; accumulated with the
// trapezoid rule on step endpoints (O(dt^2), documented contract).
using Integrand = std::function<VecX(double t, const VecX& x)>;

// Invoked after every accepted step; may mutate the state (e.g. quaternion
// renormalization). step_index counts from the start of the whole run.
using StepHook = std::function<void(long step_index, double t, VecX& x)>;

/// Scheduled discrete-event instants with integer payload tags.
struct EventSchedule {
  std::vector<double> times;
  std::vector<int> payloads;  // same length as times (or empty for tag 0)

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }
  int payload(std::size_t i) const {
    return payloads.empty() ? 0 : payloads[i];
  }
  /// Strictly increasing, inside (t0, t_end], positive bounded spacing.
  void validate(double t0, double t_end) const;
  double min_spacing(double t0) const;
  double max_spacing(double t0) const;

  static EventSchedule periodic(double period, double t0, double t_end, int payload = 0);
  static EventSchedule merge(const EventSchedule& a, const EventSchedule& b);
};

struct PropagateResult {
  VecX state;
  std::vector<VecX> integrals;  // one accumulator per registered integrand
  long steps{0};
};

/// Classical fixed-step RK4 from t0 to t1; the final sub-step is shortened to
/// land on t1 exactly. Throws NonFiniteState if the state leaves R^n.
PropagateResult propagate(const VectorField& f, VecX state, double t0, double t1,
                          double dt, const std::vector<Integrand>& integrands = {},
                          const StepHook& hook = nullptr, long step_offset = 0);

struct EventRecord {
  int index;
  int payload;
  double t;
  VecX pre;
  VecX post;
};

struct HybridTrace {
  std::vector<double> times;   // t0, every step endpoint, event instants
  std::vector<VecX> states;    // state at times[i] (post-update at events)
  std::vector<EventRecord> events;
};

/// Context handed to the discrete map at each event. The accumulated
/// integrals are mutable so the consumer can reset what it incorporates.
struct EventContext {
  int index;
  int payload;
  double t;
  std::vector<VecX>& integrals;
};

using DiscreteMap = std::function<VecX(const EventContext&, const VecX& pre)>;

/// Alternates continuous propagation and discrete updates at the scheduled
/// instants; records the pre/post state at every event. No event fires at t0.
HybridTrace run_hybrid(const VectorField& f, const DiscreteMap& map,
                       const EventSchedule& schedule, VecX state0, double t0,
                       double t_end, double dt,
                       const std::vector<Integrand>& integrands = {},
                       const StepHook& hook = nullptr);

}  // namespace hynav
