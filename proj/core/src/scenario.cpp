#include "hynav/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "hynav/attitude_observer.hpp"
#include "hynav/position_observer.hpp"
#include "hynav/velocity_observer.hpp"

namespace hynav {

EventSchedule ScheduleSpec::build(double t0, double horizon, int payload) const {
  if (!explicit_times.empty()) {
    EventSchedule s;
    s.times = explicit_times;
    s.payloads.assign(explicit_times.size(), payload);
    s.validate(t0, t0 + horizon);
    return s;
  }
  if (period > 0.0) {
    return EventSchedule::periodic(period, t0, t0 + horizon, payload);
  }
  return {};
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_numbers(const std::string& v, const std::string& key) {
  std::istringstream is(v);
  std::vector<double> out;
  double x;
  while (is >> x) out.push_back(x);
  if (out.empty()) throw ConfigError("no numeric value for key '" + key + "'");
  return out;
}

double parse_one(const std::string& v, const std::string& key) {
  const auto nums = parse_numbers(v, key);
  if (nums.size() != 1) throw ConfigError("expected one number for '" + key + "'");
  return nums[0];
}

Vec3 parse_vec3(const std::string& v, const std::string& key) {
  const auto nums = parse_numbers(v, key);
  if (nums.size() != 3) throw ConfigError("expected three numbers for '" + key + "'");
  return {nums[0], nums[1], nums[2]};
}

MatX parse_mat(const std::string& v, const std::string& key, int n) {
  const auto nums = parse_numbers(v, key);
  if (static_cast<int>(nums.size()) != n * n) {
    throw ConfigError("expected " + std::to_string(n * n) + " numbers for '" +
                      key + "'");
  }
  MatX m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = nums[r * n + c];
  return m;
}

// "periodic 0.5" or "explicit t1 t2 ..." or "none"
ScheduleSpec parse_schedule(const std::string& v, const std::string& key) {
  std::istringstream is(v);
  std::string kind;
  is >> kind;
  ScheduleSpec out;
  if (kind == "none") return out;
  if (kind == "periodic") {
    if (!(is >> out.period) || out.period <= 0.0) {
      throw ConfigError("periodic schedule needs a positive period ('" + key + "')");
    }
    return out;
  }
  if (kind == "explicit") {
    double t;
    while (is >> t) out.explicit_times.push_back(t);
    if (out.explicit_times.empty()) {
      throw ConfigError("explicit schedule needs at least one instant ('" + key + "')");
    }
    return out;
  }
  throw ConfigError("unknown schedule kind '" + kind + "' for '" + key + "'");
}

}  // namespace

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file '" + path + "'");

  std::map<std::string, std::string> kv;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("malformed section header at line " + std::to_string(lineno));
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected 'key = value' at line " + std::to_string(lineno));
    }
    const std::string key = section + "." + trim(line.substr(0, eq));
    kv[key] = trim(line.substr(eq + 1));
  }

  ScenarioConfig cfg;
  auto take = [&kv](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  if (auto v = take("run.name")) cfg.name = *v;
  if (auto v = take("run.chart")) {
    if (*v == "euler") cfg.chart = Chart::Euler;
    else if (*v == "quaternion") cfg.chart = Chart::Quaternion;
    else throw ConfigError("run.chart must be euler|quaternion");
  }
  if (auto v = take("run.dt")) cfg.dt = parse_one(*v, "run.dt");
  if (auto v = take("run.horizon")) cfg.horizon = parse_one(*v, "run.horizon");
  if (auto v = take("run.seed")) cfg.seed = static_cast<std::uint64_t>(parse_one(*v, "run.seed"));

  if (auto v = take("truth.signals")) cfg.signal_set = *v;
  if (auto v = take("truth.x0")) cfg.x0 = parse_vec3(*v, "truth.x0");
  if (auto v = take("truth.v0")) cfg.v0 = parse_vec3(*v, "truth.v0");
  if (auto v = take("truth.r0")) cfg.r0 = parse_vec3(*v, "truth.r0");

  if (auto v = take("beacons.rate")) cfg.beacon_rate = parse_one(*v, "beacons.rate");
  if (auto v = take("beacons.phase")) cfg.beacon_phase = parse_one(*v, "beacons.phase");

  if (auto v = take("attitude.schedule")) cfg.attitude_schedule = parse_schedule(*v, "attitude.schedule");
  if (auto v = take("attitude.gain")) cfg.attitude_gain = parse_one(*v, "attitude.gain");
  if (auto v = take("attitude.gain_matrix")) {
    cfg.attitude_gain_matrix = parse_mat(*v, "attitude.gain_matrix",
                                         cfg.chart == Chart::Euler ? 3 : 4);
  }
  if (auto v = take("attitude.metric")) {
    if (*v == "AH") cfg.metric = MetricVariant::AH;
    else if (*v == "H") cfg.metric = MetricVariant::H;
    else throw ConfigError("attitude.metric must be AH|H");
  }
  if (auto v = take("attitude.x0")) cfg.xhat0 = parse_vec3(*v, "attitude.x0");

  if (auto v = take("translation.measurement")) {
    if (*v == "ranges") cfg.translation = TranslationMode::Ranges;
    else if (*v == "positions") cfg.translation = TranslationMode::Positions;
    else throw ConfigError("translation.measurement must be ranges|positions");
  }
  if (auto v = take("translation.schedule")) cfg.translation_schedule = parse_schedule(*v, "translation.schedule");
  if (auto v = take("translation.gain")) cfg.position_gain = parse_one(*v, "translation.gain");
  if (auto v = take("translation.gain_matrix")) cfg.position_gain_matrix = parse_mat(*v, "translation.gain_matrix", 3);
  if (auto v = take("translation.r0")) cfg.rhat0 = parse_vec3(*v, "translation.r0");

  if (auto v = take("velocity.schedule")) cfg.velocity_schedule = parse_schedule(*v, "velocity.schedule");
  if (auto v = take("velocity.gain")) cfg.velocity_gain = parse_one(*v, "velocity.gain");
  if (auto v = take("velocity.gain_matrix")) cfg.velocity_gain_matrix = parse_mat(*v, "velocity.gain_matrix", 3);
  if (auto v = take("velocity.v0")) cfg.vhat0 = parse_vec3(*v, "velocity.v0");

  if (auto v = take("disturbance.D")) cfg.input_bound = parse_one(*v, "disturbance.D");
  if (auto v = take("disturbance.N")) cfg.noise_bound = parse_one(*v, "disturbance.N");

  if (auto v = take("output.dir")) cfg.out_dir = *v;
  if (auto v = take("output.trace")) cfg.trace_csv = *v;
  if (auto v = take("output.summary")) cfg.summary_txt = *v;
  if (auto v = take("output.contraction")) cfg.contraction_csv = *v;
  if (auto v = take("output.bounds")) cfg.bounds_csv = *v;
  if (auto v = take("output.plot")) cfg.plot_svg = *v;
  if (auto v = take("output.contraction_samples")) {
    cfg.contraction_samples = static_cast<int>(parse_one(*v, "output.contraction_samples"));
  }
  if (auto v = take("output.sample_dt")) cfg.sample_dt = parse_one(*v, "output.sample_dt");

  if (!kv.empty()) {
    throw ConfigError("unknown scenario key '" + kv.begin()->first + "'");
  }
  if (cfg.dt <= 0.0 || cfg.horizon <= 0.0) {
    throw ConfigError("run.dt and run.horizon must be positive");
  }
  return cfg;
}

ScenarioConfig builtin_scenario(const std::string& name) {
  ScenarioConfig cfg;  // defaults are the paper-sec4 values
  cfg.name = name;
  if (name == "paper-sec4") {
    return cfg;
  }
  if (name == "paper-sec4-quaternion") {
    cfg.chart = Chart::Quaternion;
    return cfg;
  }
  if (name == "paper-sec4-positions") {
    cfg.translation = TranslationMode::Positions;
    cfg.position_gain = 1.0 / 3.0;  // F3 = k I
    return cfg;
  }
  if (name == "paper-sec4-fullfix") {
    // all three states measured; velocity directly on its own schedule
    cfg.velocity_schedule = ScheduleSpec{0.7, {}};
    return cfg;
  }
  if (name == "paper-sec4-disturbed") {
    cfg.input_bound = 0.05;
    cfg.noise_bound = 0.02;
    return cfg;
  }
  throw ConfigError("unknown built-in scenario '" + name + "'");
}

std::vector<std::string> builtin_scenario_names() {
  return {"paper-sec4", "paper-sec4-quaternion", "paper-sec4-positions",
          "paper-sec4-fullfix", "paper-sec4-disturbed"};
}

namespace {

std::string schedule_to_text(const ScheduleSpec& s) {
  if (!s.enabled()) return "none";
  char buf[64];
  if (s.explicit_times.empty()) {
    std::snprintf(buf, sizeof(buf), "periodic %.17g", s.period);
    return buf;
  }
  std::string out = "explicit";
  for (double t : s.explicit_times) {
    std::snprintf(buf, sizeof(buf), " %.17g", t);
    out += buf;
  }
  return out;
}

std::string vec3_to_text(const Vec3& v) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g", v[0], v[1], v[2]);
  return buf;
}

}  // namespace

std::string scenario_to_text(const ScenarioConfig& c) {
  std::ostringstream os;
  char buf[128];
  os << "[run]\n";
  os << "name = " << c.name << "\n";
  os << "chart = " << (c.chart == Chart::Euler ? "euler" : "quaternion") << "\n";
  std::snprintf(buf, sizeof(buf), "dt = %.17g\nhorizon = %.17g\nseed = %llu\n",
                c.dt, c.horizon, static_cast<unsigned long long>(c.seed));
  os << buf << "\n";
  os << "[truth]\n";
  os << "signals = " << c.signal_set << "\n";
  os << "x0 = " << vec3_to_text(c.x0) << "\n";
  os << "v0 = " << vec3_to_text(c.v0) << "\n";
  os << "r0 = " << vec3_to_text(c.r0) << "\n\n";
  os << "[beacons]\n";
  std::snprintf(buf, sizeof(buf), "rate = %.17g\nphase = %.17g\n", c.beacon_rate,
                c.beacon_phase);
  os << buf << "\n";
  os << "[attitude]\n";
  os << "schedule = " << schedule_to_text(c.attitude_schedule) << "\n";
  std::snprintf(buf, sizeof(buf), "gain = %.17g\n", c.attitude_gain);
  os << buf;
  os << "metric = " << (c.metric == MetricVariant::AH ? "AH" : "H") << "\n";
  os << "x0 = " << vec3_to_text(c.xhat0) << "\n\n";
  os << "[translation]\n";
  os << "measurement = "
     << (c.translation == TranslationMode::Ranges ? "ranges" : "positions") << "\n";
  os << "schedule = " << schedule_to_text(c.translation_schedule) << "\n";
  std::snprintf(buf, sizeof(buf), "gain = %.17g\n", c.position_gain);
  os << buf;
  os << "r0 = " << vec3_to_text(c.rhat0) << "\n\n";
  os << "[velocity]\n";
  os << "schedule = " << schedule_to_text(c.velocity_schedule) << "\n";
  std::snprintf(buf, sizeof(buf), "gain = %.17g\n", c.velocity_gain);
  os << buf;
  os << "v0 = " << vec3_to_text(c.vhat0) << "\n\n";
  os << "[disturbance]\n";
  std::snprintf(buf, sizeof(buf), "D = %.17g\nN = %.17g\n", c.input_bound,
                c.noise_bound);
  os << buf << "\n";
  os << "[output]\n";
  os << "dir = " << c.out_dir << "\n";
  os << "trace = " << c.trace_csv << "\n";
  os << "summary = " << c.summary_txt << "\n";
  os << "contraction = " << c.contraction_csv << "\n";
  os << "bounds = " << c.bounds_csv << "\n";
  os << "plot = " << c.plot_svg << "\n";
  return os.str();
}

void certify_scenario(const ScenarioConfig& c) {
  if (!c.attitude_schedule.enabled() && !c.translation_schedule.enabled() &&
      !c.velocity_schedule.enabled()) {
    throw ConfigError("scenario schedules are all empty");
  }
  // attitude gain
  {
    AttitudeGain g = c.attitude_gain_matrix.has_value()
                         ? AttitudeGain::matrix(*c.attitude_gain_matrix)
                         : AttitudeGain::scalar(c.attitude_gain);
    // metric commutation for matrix gains is certified against Theta at the
    // observer's initial attitude; scalar gains always commute.
    MatX theta = metric_factor(EulerAngles::from(c.xhat0), c.metric);
    const MatX* theta_ptr = c.chart == Chart::Euler ? &theta : nullptr;
    const auto cert = certify_attitude_gain(g, theta_ptr);
    if (!cert.certified) {
      throw UncertifiedGain("attitude gain uncertified: lambda_bar = " +
                            std::to_string(cert.lambda_bar));
    }
  }
  // translation gain
  if (c.translation == TranslationMode::Ranges) {
    const double max_dt = c.translation_schedule.enabled()
                              ? c.translation_schedule.build(0.0, c.horizon, 0)
                                    .max_spacing(0.0)
                              : 0.0;
    const auto cert = certify_position_range_gain(c.position_gain, 0.0, max_dt);
    if (!cert.certified) {
      throw UncertifiedGain("range gain uncertified: (1-k)^2 exp = " +
                            std::to_string(cert.product));
    }
  } else {
    const Mat3 f3 = c.position_gain_matrix.has_value()
                        ? Mat3(*c.position_gain_matrix)
                        : Mat3(c.position_gain * Mat3::Identity());
    Eigen::SelfAdjointEigenSolver<Mat3> es(f3.transpose() * f3);
    if (!(es.eigenvalues().maxCoeff() < 1.0)) {
      throw UncertifiedGain("position gain uncertified");
    }
  }
  // direct velocity gain
  if (c.velocity_schedule.enabled()) {
    const Mat3 f2 = c.velocity_gain_matrix.has_value()
                        ? Mat3(*c.velocity_gain_matrix)
                        : Mat3(c.velocity_gain * Mat3::Identity());
    Eigen::SelfAdjointEigenSolver<Mat3> es(f2.transpose() * f2);
    if (!(es.eigenvalues().maxCoeff() < 1.0)) {
      throw UncertifiedGain("velocity gain uncertified");
    }
  }
  // schedule sanity ("uniformly": positive bounded spacing)
  for (const ScheduleSpec* s :
       {&c.attitude_schedule, &c.translation_schedule, &c.velocity_schedule}) {
    if (!s->enabled()) continue;
    const EventSchedule es = s->build(0.0, c.horizon, 0);
    if (es.empty()) continue;
    if (!(es.min_spacing(0.0) > 0.0)) {
      throw ConfigError("schedule spacing must be positive");
    }
  }
}

}  // namespace hynav
