#include "hynav/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hynav/attitude_observer.hpp"
#include "hynav/position_observer.hpp"
#include "hynav/svg_plot.hpp"
#include "hynav/velocity_observer.hpp"

namespace hynav {

namespace {

// Per-interval constant input disturbance, drawn uniformly in the D-ball.
// Interval k covers [e_{k-1}, e_k); realizations are seeded independently of
// the measurement-noise stream.
struct DisturbanceRealization {
  std::vector<double> boundaries;  // event times
  std::vector<Vec3> values;        // boundaries.size() + 1 entries

  Vec3 at(double t) const {
    const auto it = std::upper_bound(boundaries.begin(), boundaries.end(), t);
    return values[static_cast<std::size_t>(it - boundaries.begin())];
  }

  static DisturbanceRealization draw(const EventSchedule& schedule, double bound,
                                     std::uint64_t seed) {
    DisturbanceRealization d;
    d.boundaries = schedule.times;
    BallSampler sampler(seed ^ 0x9e3779b97f4a7c15ull);
    for (std::size_t i = 0; i <= schedule.times.size(); ++i) {
      d.values.push_back(bound > 0.0 ? Vec3(sampler.sample(3, bound))
                                     : Vec3(Vec3::Zero()));
    }
    return d;
  }
};

StageErrors stage_errors(Chart chart, const VecX& est, const VecX& truth) {
  StageErrors e;
  if (chart == Chart::Euler) {
    e.att = (est.segment<3>(0) - truth.segment<3>(0)).norm();
    e.vel = (est.segment<3>(3) - truth.segment<3>(3)).norm();
    e.pos = (est.segment<3>(6) - truth.segment<3>(6)).norm();
  } else {
    const Vec4 dq_plus = est.segment<4>(0) - truth.segment<4>(0);
    const Vec4 dq_minus = est.segment<4>(0) + truth.segment<4>(0);
    e.att = std::min(dq_plus.norm(), dq_minus.norm());  // double cover
    e.vel = (est.segment<3>(4) - truth.segment<3>(4)).norm();
    e.pos = (est.segment<3>(7) - truth.segment<3>(7)).norm();
  }
  return e;
}

// Index of the last trace row with time <= target + slack (grid sampling).
std::size_t row_at(const std::vector<double>& times, double target) {
  auto it = std::upper_bound(times.begin(), times.end(), target + 1e-9);
  if (it == times.begin()) return 0;
  return static_cast<std::size_t>(it - times.begin()) - 1;
}

}  // namespace

RunArtifacts run_scenario(const ScenarioConfig& cfg) {
  const auto t_start = std::chrono::steady_clock::now();
  certify_scenario(cfg);

  const SignalSpec signals = builtin_signals(cfg.signal_set);
  const BeaconSet beacons = BeaconSet::circles(cfg.beacon_rate, cfg.beacon_phase);
  const int att_n = cfg.chart == Chart::Euler ? 3 : 4;
  const int state_n = att_n + 6;

  // merged measurement schedule (attitude < translation < velocity at ties)
  EventSchedule schedule = EventSchedule::merge(
      EventSchedule::merge(
          cfg.attitude_schedule.build(0.0, cfg.horizon,
                                      static_cast<int>(EventTag::Attitude)),
          cfg.translation_schedule.build(0.0, cfg.horizon,
                                         static_cast<int>(EventTag::Translation))),
      cfg.velocity_schedule.build(0.0, cfg.horizon,
                                  static_cast<int>(EventTag::Velocity)));

  // ------------------------------------------------------------- truth
  VecX truth0(state_n);
  if (cfg.chart == Chart::Euler) {
    truth0 << cfg.x0, cfg.v0, cfg.r0;
  } else {
    truth0 << euler_to_quaternion(EulerAngles::from(cfg.x0)).coeffs(), cfg.v0,
        cfg.r0;
  }
  RunArtifacts art;
  art.truth = simulate_truth(signals, cfg.chart, truth0, 0.0, cfg.horizon,
                             cfg.dt, schedule);
  art.measurements = emit_measurements(
      art.truth, cfg.translation, &beacons,
      DisturbanceSpec{cfg.input_bound, cfg.noise_bound, cfg.seed});

  // ------------------------------------------------------------- observer
  const DisturbanceRealization input_dist =
      DisturbanceRealization::draw(schedule, cfg.input_bound, cfg.seed);

  VectorField field;
  if (cfg.chart == Chart::Euler) {
    field = [&signals, &input_dist](double t, const VecX& s) {
      const EulerAngles x{s[0], s[1], s[2]};
      VecX ds(9);
      ds.segment<3>(0) =
          euler_rate_matrix_inverse(x) * signals.omega(t) + input_dist.at(t);
      ds.segment<3>(3) = dcm_from_euler(x) * signals.gamma(t);
      ds.segment<3>(6) = s.segment<3>(3);
      return ds;
    };
  } else {
    // input disturbance realized as a bounded body-rate error in this chart
    field = [&signals, &input_dist](double t, const VecX& s) {
      const Vec4 q = s.segment<4>(0);
      VecX ds(10);
      ds.segment<4>(0) =
          0.5 * quaternion_rate_matrix(signals.omega(t) + input_dist.at(t)) * q;
      ds.segment<3>(4) =
          dcm_from_quaternion(UnitQuaternion::from(q)) * signals.gamma(t);
      ds.segment<3>(7) = s.segment<3>(4);
      return ds;
    };
  }

  StepHook hook;
  if (cfg.chart == Chart::Quaternion) {
    hook = [](long step, double, VecX& s) {
      if ((step + 1) % 1000 == 0) s.segment<4>(0).normalize();
    };
  }

  std::vector<Integrand> integrands;
  if (cfg.translation == TranslationMode::Positions) {
    integrands.push_back([att_n](double, const VecX& s) {
      return VecX(s.segment(att_n, 3));
    });
  }

  const AttitudeGain att_gain = cfg.attitude_gain_matrix.has_value()
                                    ? AttitudeGain::matrix(*cfg.attitude_gain_matrix)
                                    : AttitudeGain::scalar(cfg.attitude_gain);
  const Mat3 f3 = cfg.position_gain_matrix.has_value()
                      ? Mat3(*cfg.position_gain_matrix)
                      : Mat3(cfg.position_gain * Mat3::Identity());
  const Mat3 f2 = cfg.velocity_gain_matrix.has_value()
                      ? Mat3(*cfg.velocity_gain_matrix)
                      : Mat3(cfg.velocity_gain * Mat3::Identity());

  VelocityObserverState vstate;
  int skipped_singular = 0;

  DiscreteMap map = [&](const EventContext& ctx, const VecX& pre) -> VecX {
    VecX post = pre;
    const MeasurementEvent& meas = art.measurements[static_cast<std::size_t>(ctx.index)];
    switch (static_cast<EventTag>(ctx.payload)) {
      case EventTag::Attitude: {
        if (cfg.chart == Chart::Euler) {
          const auto& fix = std::get<AttitudeEulerFix>(meas.payload);
          const EulerAngles prior{pre[0], pre[1], pre[2]};
          Mat3 theta;
          const Mat3* theta_ptr = nullptr;
          if (!att_gain.is_scalar()) {
            theta = metric_factor(prior, cfg.metric);
            theta_ptr = &theta;
          }
          post.segment<3>(0) =
              attitude_discrete_update(prior, EulerAngles::from(fix.angles),
                                       att_gain, theta_ptr)
                  .vec();
        } else {
          const auto& fix = std::get<AttitudeQuatFix>(meas.payload);
          post.segment<4>(0) =
              quaternion_discrete_update(UnitQuaternion::from(pre.segment<4>(0)),
                                         UnitQuaternion::from(fix.q), att_gain)
                  .coeffs();
        }
        break;
      }
      case EventTag::Translation: {
        if (cfg.translation == TranslationMode::Positions) {
          const auto& fix = std::get<PositionFix>(meas.payload);
          post.segment<3>(att_n + 3) =
              position_update_linear(pre.segment<3>(att_n + 3), fix.r, f3);
          if (vstate.r_fix_prev.has_value()) {
            const double dt_i = vstate.close_interval(ctx.t);
            post.segment<3>(att_n) = velocity_update_from_positions(
                pre.segment<3>(att_n), Vec3(ctx.integrals[0]),
                *vstate.r_fix_prev, fix.r, dt_i);
          }
          ctx.integrals[0].setZero();
          vstate.r_fix_prev = fix.r;
          vstate.t_last_fix = ctx.t;
        } else {
          const auto& fix = std::get<RangeFix>(meas.payload);
          const Mat3 j = beacon_difference_matrix(fix.beacon_pos);
          if (beacons_coplanar(j)) {
            ++skipped_singular;  // carry the estimate; keep the previous pairing
            break;
          }
          const Mat3 j_inv = range_gain(j, 1.0);
          const Vec3 res_pre = squared_range_residual(
              predicted_ranges(pre.segment<3>(att_n + 3), fix.beacon_pos), fix.y);
          if (vstate.stored_range_term.has_value()) {
            const double dt_i = vstate.close_interval(ctx.t);
            post.segment<3>(att_n) = velocity_update_from_ranges(
                pre.segment<3>(att_n), j_inv, res_pre,
                *vstate.stored_range_term, dt_i);
          }
          post.segment<3>(att_n + 3) = position_update_ranges(
              pre.segment<3>(att_n + 3),
              predicted_ranges(pre.segment<3>(att_n + 3), fix.beacon_pos),
              fix.y, range_gain(j, cfg.position_gain));
          vstate.stored_range_term =
              j_inv * squared_range_residual(
                          predicted_ranges(post.segment<3>(att_n + 3),
                                           fix.beacon_pos),
                          fix.y);
          vstate.t_last_fix = ctx.t;
        }
        break;
      }
      case EventTag::Velocity: {
        const auto& fix = std::get<VelocityFix>(meas.payload);
        post.segment<3>(att_n) =
            velocity_update_direct(pre.segment<3>(att_n), fix.v, f2);
        break;
      }
    }
    return post;
  };

  VecX est0(state_n);
  if (cfg.chart == Chart::Euler) {
    est0 << cfg.xhat0, cfg.vhat0, cfg.rhat0;
  } else {
    est0 << euler_to_quaternion(EulerAngles::from(cfg.xhat0)).coeffs(),
        cfg.vhat0, cfg.rhat0;
  }
  art.estimate = run_hybrid(field, map, schedule, est0, 0.0, cfg.horizon,
                            cfg.dt, integrands, hook);

  if (art.estimate.times.size() != art.truth.times.size()) {
    throw Error("internal: truth and estimate traces are misaligned");
  }

  // ------------------------------------------------------------- summary
  RunSummary& sum = art.summary;
  sum.scenario = cfg.name;
  sum.chart = cfg.chart;
  sum.skipped_singular_events = skipped_singular;

  // post-update errors per event *instant* (last event at each time)
  const auto& events = art.estimate.events;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (i + 1 < events.size() && events[i + 1].t == events[i].t) continue;
    // truth state at this instant
    const std::size_t k = static_cast<std::size_t>(
        std::lower_bound(art.truth.event_times.begin(),
                         art.truth.event_times.end(), events[i].t) -
        art.truth.event_times.begin());
    sum.event_times.push_back(events[i].t);
    sum.post_event_errors.push_back(
        stage_errors(cfg.chart, events[i].post, art.truth.event_states[k]));
  }
  for (std::size_t i = 0; i + 1 < sum.post_event_errors.size(); ++i) {
    const double a = sum.post_event_errors[i].total();
    const double b = sum.post_event_errors[i + 1].total();
    sum.event_error_ratios.push_back(a > 0.0 ? b / a : 0.0);
  }
  sum.final_error = stage_errors(cfg.chart, art.estimate.states.back(),
                                 art.truth.states.back());

  // ------------------------------------------------- contraction report
  {
    // attitude stage along the estimate trajectory, in the configured metric
    HybridTrace att_trace;
    att_trace.times = art.estimate.times;
    att_trace.states.reserve(art.estimate.states.size());
    for (const auto& s : art.estimate.states) {
      att_trace.states.push_back(s.head(att_n));
    }
    std::vector<MatX> jacobians;
    for (const auto& ev : art.estimate.events) {
      if (ev.payload != static_cast<int>(EventTag::Attitude)) continue;
      EventRecord r;
      r.index = static_cast<int>(att_trace.events.size());
      r.payload = ev.payload;
      r.t = ev.t;
      r.pre = ev.pre.head(att_n);
      r.post = ev.post.head(att_n);
      att_trace.events.push_back(std::move(r));
      if (att_gain.is_scalar()) {
        jacobians.push_back(att_gain.k() * MatX::Identity(att_n, att_n));
      } else {
        jacobians.push_back(att_gain.F());
      }
    }
    VectorField att_field;
    MetricSpec metric;
    if (cfg.chart == Chart::Euler) {
      att_field = [&signals, &input_dist](double t, const VecX& x) {
        return VecX(attitude_continuous_field(EulerAngles::from(x), signals.omega(t)) +
                    input_dist.at(t));
      };
      metric.theta = [&cfg](const VecX& x, double) {
        return MatX(metric_factor(EulerAngles::from(x), cfg.metric));
      };
    } else {
      att_field = [&signals, &input_dist](double t, const VecX& q) {
        return VecX(0.5 * quaternion_rate_matrix(signals.omega(t) + input_dist.at(t)) * q);
      };
      metric.theta = [](const VecX&, double) { return MatX(MatX::Identity(4, 4)); };
    }
    art.contraction = verify_hybrid_condition(att_trace, att_field, jacobians,
                                              metric, cfg.contraction_samples);
    sum.contraction_alpha = art.contraction.alpha;
    sum.contraction_satisfied = art.contraction.satisfied;
  }

  // ------------------------------------------------------ bound recursion
  if (cfg.input_bound > 0.0 || cfg.noise_bound > 0.0) {
    const EventSchedule att_sched = cfg.attitude_schedule.build(
        0.0, cfg.horizon, static_cast<int>(EventTag::Attitude));
    if (!att_sched.empty()) {
      std::vector<double> dts, ds, ns, ks;
      double prev = 0.0;
      for (double t : att_sched.times) {
        dts.push_back(t - prev);
        ds.push_back(cfg.input_bound);
        ns.push_back(cfg.noise_bound);
        ks.push_back(att_gain.is_scalar() ? std::abs(att_gain.k()) : 0.0);
        prev = t;
      }
      const double r0 = (est0.head(att_n) - truth0.head(att_n)).norm();
      art.bounds = propagate_bound_timevarying(r0, 0.0, ds, ns, dts,
                                               att_gain.is_scalar() ? &ks : nullptr);
    }
  }

  // ------------------------------------------------------------ trace CSV
  {
    CsvTable& t = art.trace;
    t.columns.push_back("t");
    const char* att_cols_e[] = {"psi", "theta", "phi"};
    const char* att_cols_q[] = {"q0", "q1", "q2", "q3"};
    const char* vel_cols[] = {"vx", "vy", "vz"};
    const char* pos_cols[] = {"rx", "ry", "rz"};
    auto push_group = [&t, att_n, &att_cols_e, &att_cols_q, &vel_cols,
                       &pos_cols](const std::string& suffix) {
      for (int i = 0; i < att_n; ++i) {
        t.columns.push_back((att_n == 3 ? att_cols_e[i] : att_cols_q[i]) + suffix);
      }
      for (const char* c : vel_cols) t.columns.push_back(c + suffix);
      for (const char* c : pos_cols) t.columns.push_back(c + suffix);
    };
    push_group("");
    push_group("_est");
    t.columns.insert(t.columns.end(), {"att_err", "vel_err", "pos_err", "event"});

    const long n_out = std::lround(cfg.horizon / cfg.sample_dt);
    std::size_t ev_cursor = 0;
    for (long i = 0; i <= n_out; ++i) {
      const double tg = std::min(static_cast<double>(i) * cfg.sample_dt, cfg.horizon);
      const std::size_t row = row_at(art.truth.times, tg);
      const VecX& xt = art.truth.states[row];
      const VecX& xe = art.estimate.states[row];
      std::vector<double> r;
      r.reserve(t.columns.size());
      r.push_back(tg);
      for (int c = 0; c < state_n; ++c) r.push_back(xt[c]);
      for (int c = 0; c < state_n; ++c) r.push_back(xe[c]);
      const StageErrors se = stage_errors(cfg.chart, xe, xt);
      r.push_back(se.att);
      r.push_back(se.vel);
      r.push_back(se.pos);
      // bitmask of event kinds since the previous grid row (1 att, 2 trans, 4 vel)
      int flag = 0;
      while (ev_cursor < art.estimate.events.size() &&
             art.estimate.events[ev_cursor].t <= tg + 1e-9) {
        flag |= 1 << art.estimate.events[ev_cursor].payload;
        ++ev_cursor;
      }
      r.push_back(static_cast<double>(flag));
      t.rows.push_back(std::move(r));
    }
  }

  sum.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return art;
}

std::string RunSummary::text() const {
  std::ostringstream os;
  char buf[256];
  os << "scenario: " << scenario << " ("
     << (chart == Chart::Euler ? "euler" : "quaternion") << " chart)\n";
  std::snprintf(buf, sizeof(buf),
                "final errors: attitude %.6e, velocity %.6e, position %.6e\n",
                final_error.att, final_error.vel, final_error.pos);
  os << buf;
  std::snprintf(buf, sizeof(buf), "events: %zu, singular-geometry skips: %d\n",
                event_times.size(), skipped_singular_events);
  os << buf;
  std::snprintf(buf, sizeof(buf), "contraction alpha: %.6e (%s)\n",
                contraction_alpha,
                contraction_satisfied ? "satisfied" : "VIOLATED");
  os << buf;
  os << "post-update total error per event instant:\n";
  for (std::size_t i = 0; i < event_times.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "  t=%8.3f  err=%.6e%s\n", event_times[i],
                  post_event_errors[i].total(),
                  i > 0 && i - 1 < event_error_ratios.size()
                      ? ("  ratio=" + std::to_string(event_error_ratios[i - 1])).c_str()
                      : "");
    os << buf;
  }
  std::snprintf(buf, sizeof(buf), "wall time: %.3f s\n", wall_seconds);
  os << buf;
  return os.str();
}

std::string resolve_output_dir(const ScenarioConfig& cfg) {
  if (const char* env = std::getenv("HYNAV_OUTPUT_DIR")) {
    return std::string(env);
  }
  return cfg.out_dir;
}

void write_run_outputs(const ScenarioConfig& cfg, const RunArtifacts& art) {
  namespace fs = std::filesystem;
  const fs::path dir = resolve_output_dir(cfg);
  fs::create_directories(dir);
  write_csv((dir / cfg.trace_csv).string(), art.trace);
  {
    std::ofstream os(dir / cfg.summary_txt);
    os << art.summary.text();
  }
  {
    std::ofstream os(dir / cfg.contraction_csv);
    art.contraction.write_csv(os);
  }
  if (!art.bounds.empty()) {
    std::ofstream os(dir / cfg.bounds_csv);
    write_bounds_csv(os, art.bounds);
  }
  write_plot_svg((dir / cfg.plot_svg).string(), art.trace,
                 cfg.chart == Chart::Euler ? 3 : 4);
}

}  // namespace hynav
