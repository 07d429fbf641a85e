#include <doctest.h>

#include <cmath>

#include "hynav/hybrid.hpp"
#include "golden_values.hpp"

using namespace hynav;

namespace {

VecX scalar_state(double v) {
  VecX x(1);
  x[0] = v;
  return x;
}

}  // namespace

TEST_CASE("propagate: zero field leaves state unchanged") {
  VectorField f = [](double, const VecX& x) { return VecX(VecX::Zero(x.size())); };
  VecX x0(3);
  x0 << 1.0, -2.0, 3.0;
  const auto res = propagate(f, x0, 0.0, 1.0, 1e-2);
  CHECK((res.state - x0).norm() == 0.0);
}

TEST_CASE("propagate: exponential to 1e-10") {
  VectorField f = [](double, const VecX& x) { return x; };
  const auto res = propagate(f, scalar_state(1.0), 0.0, 1.0, 1e-3);
  CHECK(std::abs(res.state[0] - golden::kEulerE) < 1e-10);
}

TEST_CASE("propagate: fourth-order step refinement") {
  VectorField f = [](double, const VecX& x) { return x; };
  // reference at a much finer step stands in for the dt -> 0 limit
  const double ref = propagate(f, scalar_state(1.0), 0.0, 1.0, 1e-5).state[0];
  const double e1 = std::abs(propagate(f, scalar_state(1.0), 0.0, 1.0, 0.05).state[0] - ref);
  const double e2 = std::abs(propagate(f, scalar_state(1.0), 0.0, 1.0, 0.025).state[0] - ref);
  CHECK(e1 / e2 > 13.0);
  CHECK(e1 / e2 < 19.0);
}

TEST_CASE("propagate: throws on non-finite state") {
  VectorField f = [](double, const VecX& x) { return VecX(x.array().square().matrix()); };
  CHECK_THROWS_AS(propagate(f, scalar_state(1.0), 0.0, 2.0, 1e-2), NonFiniteState);
}

TEST_CASE("propagate: trapezoid accumulator") {
  VectorField f = [](double, const VecX& x) { return x; };
  std::vector<Integrand> gs = {[](double, const VecX& x) { return x; }};
  const auto res = propagate(f, scalar_state(1.0), 0.0, 1.0, 1e-3, gs);
  // integral of e^t over [0,1] = e - 1, trapezoid error O(dt^2)
  CHECK(std::abs(res.integrals[0][0] - (golden::kEulerE - 1.0)) < 1e-6);
  CHECK(std::abs(res.integrals[0][0] - (golden::kEulerE - 1.0)) > 1e-9);
}

TEST_CASE("run_hybrid: empty schedule equals pure propagation") {
  VectorField f = [](double, const VecX& x) { return x; };
  DiscreteMap id = [](const EventContext&, const VecX& pre) { return pre; };
  const auto trace = run_hybrid(f, id, {}, scalar_state(1.0), 0.0, 1.0, 0.125);
  const auto ref = propagate(f, scalar_state(1.0), 0.0, 1.0, 0.125);
  CHECK(trace.events.empty());
  CHECK(trace.states.back()[0] == ref.state[0]);
}

TEST_CASE("run_hybrid: identity map matches segmented propagation exactly") {
  VectorField f = [](double t, const VecX& x) { return VecX(std::cos(t) * x); };
  DiscreteMap id = [](const EventContext&, const VecX& pre) { return pre; };
  EventSchedule s;
  s.times = {0.5};
  const auto trace = run_hybrid(f, id, s, scalar_state(1.0), 0.0, 1.0, 0.25);
  auto leg1 = propagate(f, scalar_state(1.0), 0.0, 0.5, 0.25);
  auto leg2 = propagate(f, leg1.state, 0.5, 1.0, 0.25);
  CHECK(trace.events.size() == 1);
  CHECK(trace.events[0].t == 0.5);
  CHECK(trace.events[0].pre[0] == leg1.state[0]);
  CHECK(trace.states.back()[0] == leg2.state[0]);
}

TEST_CASE("run_hybrid: geometric decay through discrete halving") {
  VectorField f = [](double, const VecX& x) { return VecX(VecX::Zero(x.size())); };
  DiscreteMap half = [](const EventContext&, const VecX& pre) { return VecX(0.5 * pre); };
  EventSchedule s;
  const int n = 10;
  for (int i = 1; i <= n; ++i) s.times.push_back(static_cast<double>(i));
  const auto trace = run_hybrid(f, half, s, scalar_state(1.0), 0.0, 10.0, 0.125);
  CHECK(trace.states.back()[0] == std::pow(2.0, -n));
  for (int i = 0; i < n; ++i) {
    CHECK(trace.events[i].post[0] == std::pow(2.0, -(i + 1)));
  }
}

TEST_CASE("run_hybrid: exact event alignment and accumulator reset") {
  VectorField f = [](double, const VecX& x) { return VecX(VecX::Ones(x.size())); };
  std::vector<Integrand> gs = {[](double, const VecX& x) { return x; }};
  std::vector<double> integral_at_event;
  DiscreteMap reset = [&integral_at_event](const EventContext& ctx, const VecX& pre) {
    integral_at_event.push_back(ctx.integrals[0][0]);
    ctx.integrals[0].setZero();
    return pre;
  };
  EventSchedule s;
  s.times = {0.3, 0.6};  // not multiples of dt: final sub-steps shorten
  const auto trace = run_hybrid(f, reset, s, scalar_state(0.0), 0.0, 1.0, 0.125, gs);
  CHECK(trace.events[0].t == 0.3);
  CHECK(trace.events[1].t == 0.6);
  // integral of (t) over [0,0.3] = 0.045; over [0.3,0.6] = 0.3*0.45 = 0.135
  CHECK(std::abs(integral_at_event[0] - 0.045) < 1e-10);
  CHECK(std::abs(integral_at_event[1] - 0.135) < 1e-10);
  // the grid contains the event instants exactly
  bool found = false;
  for (double t : trace.times) found = found || t == 0.3;
  CHECK(found);
}

TEST_CASE("run_hybrid: bit-identical reruns") {
  VectorField f = [](double t, const VecX& x) {
    return VecX(std::sin(3 * t) * x + VecX::Constant(x.size(), 0.25));
  };
  DiscreteMap m = [](const EventContext&, const VecX& pre) { return VecX(0.9 * pre); };
  EventSchedule s = EventSchedule::periodic(0.37, 0.0, 5.0);
  const auto a = run_hybrid(f, m, s, scalar_state(1.0), 0.0, 5.0, 1e-3);
  const auto b = run_hybrid(f, m, s, scalar_state(1.0), 0.0, 5.0, 1e-3);
  REQUIRE(a.times.size() == b.times.size());
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    CHECK(a.times[i] == b.times[i]);
    CHECK(a.states[i][0] == b.states[i][0]);
  }
}

TEST_CASE("event schedule validation and merge") {
  EventSchedule bad;
  bad.times = {1.0, 1.0};
  CHECK_THROWS_AS(bad.validate(0.0, 2.0), ConfigError);
  EventSchedule late;
  late.times = {3.0};
  CHECK_THROWS_AS(late.validate(0.0, 2.0), ConfigError);

  EventSchedule a = EventSchedule::periodic(0.5, 0.0, 2.0, 1);
  EventSchedule b = EventSchedule::periodic(0.5, 0.0, 2.0, 0);
  const EventSchedule m = EventSchedule::merge(a, b);
  REQUIRE(m.size() == 8);
  // ties resolve lower payload first
  CHECK(m.times[0] == 0.5);
  CHECK(m.payloads[0] == 0);
  CHECK(m.payloads[1] == 1);
  CHECK(m.min_spacing(0.0) == 0.0);
  CHECK(EventSchedule::periodic(0.5, 0.0, 2.0).max_spacing(0.0) == 0.5);
}
