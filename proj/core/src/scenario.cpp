#include "gpsim/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gpsim/error.hpp"

namespace gpsim {

using Json = nlohmann::ordered_json;

const char* to_string(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::Pd: return "pd";
    case ControllerKind::Pid: return "pid";
    case ControllerKind::Lqr: return "lqr";
  }
  return "pd";
}

InsertionTolerances ToleranceConfig::to_tolerances() const {
  return {sma_m, ecc_max, deg2rad(inc_deg)};
}

SupervisorConfig SupervisorSettings::to_config() const {
  return {deg2rad(rate_limit_deg_s), dump_enter_fraction, dump_exit_fraction};
}

SensorSuite SensorConfig::to_suite() const {
  SensorSuite s;
  s.star_tracker_sigma = star_tracker_sigma_rad;
  s.gyro_noise_sigma = gyro_noise_sigma_rad_s;
  s.gyro_bias_walk_sigma = gyro_bias_walk_sigma;
  s.gyro_initial_bias = gyro_initial_bias_rad_s;
  s.sun_sensor_sigma = deg2rad(sun_sensor_sigma_deg);
  s.earth_sensor_sigma = deg2rad(earth_sensor_sigma_deg);
  s.magnetometer_sigma = magnetometer_sigma_t;
  s.star_tracker_rate = star_tracker_rate_hz;
  s.gyro_rate = gyro_rate_hz;
  s.sun_sensor_rate = sun_sensor_rate_hz;
  s.earth_sensor_rate = earth_sensor_rate_hz;
  s.magnetometer_rate = magnetometer_rate_hz;
  return s;
}

PerturbationConfig PerturbationSettings::to_config() const {
  return {j2, srp_accel_mps2, lunisolar_accel_mps2};
}

FuelBudget StationkeepingConfig::to_budget() const { return {propellant_kg, isp_s, dry_mass_kg}; }

ConstellationSpec ConstellationConfig::to_spec() const {
  ConstellationSpec c;
  c.num_planes = num_planes;
  c.sats_per_plane = sats_per_plane;
  c.inclination = deg2rad(inclination_deg);
  c.semi_major_axis = semi_major_axis_m;
  if (raan_spacing_deg) c.raan_spacing = deg2rad(*raan_spacing_deg);
  if (phase_offset_deg) c.phase_offset_between_planes = deg2rad(*phase_offset_deg);
  return c;
}

CoverageGrid ConstellationConfig::to_grid() const {
  return {deg2rad(lat_step_deg), deg2rad(lon_step_deg), deg2rad(mask_deg)};
}

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

// Reads one JSON object, remembering which keys were consumed so that
// leftovers can be reported as unknown.
class Reader {
 public:
  Reader(const Json* j, std::string path) : j_(j), path_(std::move(path)) {
    if (j_ && !j_->is_object()) throw ScenarioError(path_, "expected an object");
  }

  Reader child(const std::string& key) {
    seen_.insert(key);
    if (!j_ || !j_->contains(key)) return Reader(nullptr, join(path_, key));
    return Reader(&(*j_)[key], join(path_, key));
  }

  const Json* raw(const std::string& key) {
    seen_.insert(key);
    if (!j_ || !j_->contains(key)) return nullptr;
    return &(*j_)[key];
  }

  void get(const std::string& key, double& out) {
    if (const Json* v = raw(key)) out = number(*v, join(path_, key));
  }

  void get(const std::string& key, std::optional<double>& out) {
    if (const Json* v = raw(key)) {
      if (v->is_null()) {
        out.reset();
      } else {
        out = number(*v, join(path_, key));
      }
    }
  }

  void get(const std::string& key, int& out) {
    if (const Json* v = raw(key)) {
      if (!v->is_number_integer()) throw ScenarioError(join(path_, key), "expected an integer");
      out = v->get<int>();
    }
  }

  void get(const std::string& key, std::uint64_t& out) {
    if (const Json* v = raw(key)) {
      if (!v->is_number_unsigned()) {
        throw ScenarioError(join(path_, key), "expected a non-negative integer");
      }
      out = v->get<std::uint64_t>();
    }
  }

  void get(const std::string& key, bool& out) {
    if (const Json* v = raw(key)) {
      if (!v->is_boolean()) throw ScenarioError(join(path_, key), "expected true or false");
      out = v->get<bool>();
    }
  }

  void get(const std::string& key, std::string& out) {
    if (const Json* v = raw(key)) {
      if (!v->is_string()) throw ScenarioError(join(path_, key), "expected a string");
      out = v->get<std::string>();
    }
  }

  void get(const std::string& key, Vec3& out) {
    if (const Json* v = raw(key)) out = vec3(*v, join(path_, key));
  }

  void get(const std::string& key, Mat3& out) {
    const Json* v = raw(key);
    if (!v) return;
    const std::string p = join(path_, key);
    if (!v->is_array() || v->size() != 3) throw ScenarioError(p, "expected a 3x3 array");
    Mat3 m;
    for (int r = 0; r < 3; ++r) {
      const Vec3 row = vec3((*v)[r], p + "[" + std::to_string(r) + "]");
      m(r, 0) = row.x;
      m(r, 1) = row.y;
      m(r, 2) = row.z;
    }
    out = m;
  }

  void finish() const {
    if (!j_) return;
    for (auto it = j_->begin(); it != j_->end(); ++it) {
      if (!seen_.count(it.key())) throw ScenarioError(join(path_, it.key()), "unknown key");
    }
  }

  const std::string& path() const { return path_; }

  static double number(const Json& v, const std::string& path) {
    if (!v.is_number()) throw ScenarioError(path, "expected a number");
    return v.get<double>();
  }

  static Vec3 vec3(const Json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 3) throw ScenarioError(path, "expected an array of 3 numbers");
    return {number(v[0], path + "[0]"), number(v[1], path + "[1]"), number(v[2], path + "[2]")};
  }

 private:
  const Json* j_;
  std::string path_;
  std::set<std::string> seen_;
};

std::vector<StageSpec> read_stages(const Json* v, const std::string& path) {
  if (!v->is_array()) throw ScenarioError(path, "expected an array of stages");
  std::vector<StageSpec> out;
  for (std::size_t k = 0; k < v->size(); ++k) {
    Reader r(&(*v)[k], path + "[" + std::to_string(k) + "]");
    StageSpec s;
    r.get("label", s.label);
    r.get("isp_s", s.isp);
    r.get("m0_kg", s.m0);
    r.get("mf_kg", s.mf);
    r.finish();
    out.push_back(s);
  }
  return out;
}

std::vector<TimedEvent> read_events(const Json* v, const std::string& path) {
  if (!v->is_array()) throw ScenarioError(path, "expected an array of events");
  std::vector<TimedEvent> out;
  for (std::size_t k = 0; k < v->size(); ++k) {
    Reader r(&(*v)[k], path + "[" + std::to_string(k) + "]");
    TimedEvent e;
    r.get("epoch_s", e.epoch_s);
    r.get("type", e.type);
    r.finish();
    out.push_back(e);
  }
  return out;
}

void read_gains(Reader r, PidGains& g) {
  r.get("kp", g.kp);
  r.get("ki", g.ki);
  r.get("kd", g.kd);
  r.get("integrator_limit", g.integrator_limit);
  r.finish();
}

Scenario from_json(const Json& root) {
  Scenario s;
  Reader top(&root, "");
  top.get("seed", s.seed);
  {
    Reader r = top.child("body");
    r.get("mu", s.body.mu);
    r.get("re", s.body.re);
    r.get("j2", s.body.j2);
    r.finish();
  }
  {
    Reader r = top.child("transfer");
    auto& t = s.transfer;
    r.get("r1_m", t.r1_m);
    r.get("r2_m", t.r2_m);
    r.get("target_inclination_deg", t.target_inclination_deg);
    r.get("gravity_loss_mps", t.gravity_loss_mps);
    r.get("required_dv_mps", t.required_dv_mps);
    if (const Json* v = r.raw("stages")) t.stages = read_stages(v, join(r.path(), "stages"));
    r.finish();
  }
  {
    Reader r = top.child("insertion_errors");
    auto& e = s.insertion_errors;
    r.get("misalignment_sigma_deg", e.misalignment_sigma_deg);
    r.get("velocity_error_per_deg_mps", e.velocity_error_per_deg_mps);
    r.get("timing_sigma_s", e.timing_sigma_s);
    r.finish();
  }
  {
    Reader r = top.child("tolerances");
    r.get("sma_m", s.tolerances.sma_m);
    r.get("ecc_max", s.tolerances.ecc_max);
    r.get("inc_deg", s.tolerances.inc_deg);
    r.finish();
  }
  {
    Reader r = top.child("trim");
    r.get("band_low_mps", s.trim.band_low_mps);
    r.get("band_high_mps", s.trim.band_high_mps);
    r.get("linear_factor", s.trim.linear_factor);
    r.finish();
  }
  {
    Reader r = top.child("adcs");
    auto& a = s.adcs;
    r.get("enabled", a.enabled);
    r.get("dt_s", a.dt_s);
    r.get("duration_s", a.duration_s);
    r.get("telemetry_interval_s", a.telemetry_interval_s);
    r.get("inertia_kgm2", a.inertia_kgm2);
    std::string ctrl = to_string(a.controller);
    r.get("controller", ctrl);
    if (ctrl == "pd") {
      a.controller = ControllerKind::Pd;
    } else if (ctrl == "pid") {
      a.controller = ControllerKind::Pid;
    } else if (ctrl == "lqr") {
      a.controller = ControllerKind::Lqr;
    } else {
      throw ScenarioError(join(r.path(), "controller"), "expected one of pd, pid, lqr");
    }
    read_gains(r.child("gains"), a.gains);
    {
      Reader l = r.child("lqr");
      l.get("q_attitude", a.lqr.q_attitude);
      l.get("q_rate", a.lqr.q_rate);
      l.get("r", a.lqr.r);
      l.finish();
    }
    {
      Reader w = r.child("wheels");
      w.get("max_torque_nm", a.wheels.max_torque);
      w.get("max_momentum_nms", a.wheels.max_momentum);
      w.finish();
    }
    {
      Reader m = r.child("magnetorquers");
      m.get("max_dipole_am2", a.magnetorquers.max_dipole);
      m.get("dump_gain", a.dump_gain);
      m.finish();
    }
    {
      Reader h = r.child("safe_hold");
      h.get("kp", a.safe_hold.kp);
      h.get("kd", a.safe_hold.kd);
      h.get("max_torque_nm", a.safe_hold.max_torque_nm);
      h.get("thruster_lever_arm_m", a.safe_hold.thruster_lever_arm_m);
      h.get("thruster_isp_s", a.safe_hold.thruster_isp_s);
      h.finish();
    }
    {
      Reader v = r.child("supervisor");
      auto& sv = a.supervisor;
      v.get("rate_limit_deg_s", sv.rate_limit_deg_s);
      v.get("dump_enter_fraction", sv.dump_enter_fraction);
      v.get("dump_exit_fraction", sv.dump_exit_fraction);
      v.get("divergence_sigma_deg", sv.divergence_sigma_deg);
      v.get("divergence_rejections", sv.divergence_rejections);
      v.finish();
    }
    {
      Reader n = r.child("sensors");
      auto& c = a.sensors;
      n.get("star_tracker_sigma_rad", c.star_tracker_sigma_rad);
      n.get("gyro_noise_sigma_rad_s", c.gyro_noise_sigma_rad_s);
      n.get("gyro_bias_walk_sigma", c.gyro_bias_walk_sigma);
      n.get("gyro_initial_bias_rad_s", c.gyro_initial_bias_rad_s);
      n.get("sun_sensor_sigma_deg", c.sun_sensor_sigma_deg);
      n.get("earth_sensor_sigma_deg", c.earth_sensor_sigma_deg);
      n.get("magnetometer_sigma_t", c.magnetometer_sigma_t);
      n.get("star_tracker_rate_hz", c.star_tracker_rate_hz);
      n.get("gyro_rate_hz", c.gyro_rate_hz);
      n.get("sun_sensor_rate_hz", c.sun_sensor_rate_hz);
      n.get("earth_sensor_rate_hz", c.earth_sensor_rate_hz);
      n.get("magnetometer_rate_hz", c.magnetometer_rate_hz);
      n.finish();
    }
    r.get("initial_pointing_error_deg", a.initial_pointing_error_deg);
    r.get("initial_knowledge_error_deg", a.initial_knowledge_error_deg);
    r.get("initial_rate_deg_s", a.initial_rate_deg_s);
    r.get("disturbance_torque_nm", a.disturbance_torque_nm);
    r.get("sun_direction", a.sun_direction);
    if (const Json* v = r.raw("faults")) a.faults = read_events(v, join(r.path(), "faults"));
    if (const Json* v = r.raw("ground_commands")) {
      a.ground_commands = read_events(v, join(r.path(), "ground_commands"));
    }
    r.finish();
  }
  {
    Reader r = top.child("stationkeeping");
    auto& k = s.stationkeeping;
    r.get("enabled", k.enabled);
    r.get("window_halfwidth_deg", k.window_halfwidth_deg);
    r.get("inclination_drift_deg_per_year", k.inclination_drift_deg_per_year);
    r.get("propellant_kg", k.propellant_kg);
    r.get("isp_s", k.isp_s);
    r.get("dry_mass_kg", k.dry_mass_kg);
    r.get("monitor_duration_s", k.monitor_duration_s);
    r.get("sample_interval_s", k.sample_interval_s);
    r.get("step_s", k.step_s);
    r.get("horizon_s", k.horizon_s);
    {
      Reader p = r.child("perturbations");
      p.get("j2", k.perturbations.j2);
      p.get("srp_accel_mps2", k.perturbations.srp_accel_mps2);
      p.get("lunisolar_accel_mps2", k.perturbations.lunisolar_accel_mps2);
      p.finish();
    }
    r.get("lifetime_years", k.lifetime_years);
    r.get("sma_adjustment_m", k.sma_adjustment_m);
    r.finish();
  }
  {
    Reader r = top.child("constellation");
    auto& c = s.constellation;
    r.get("num_planes", c.num_planes);
    r.get("sats_per_plane", c.sats_per_plane);
    r.get("inclination_deg", c.inclination_deg);
    r.get("semi_major_axis_m", c.semi_major_axis_m);
    r.get("raan_spacing_deg", c.raan_spacing_deg);
    r.get("phase_offset_deg", c.phase_offset_deg);
    r.get("lat_step_deg", c.lat_step_deg);
    r.get("lon_step_deg", c.lon_step_deg);
    r.get("mask_deg", c.mask_deg);
    r.get("duration_s", c.duration_s);
    r.get("step_s", c.step_s);
    r.finish();
  }
  top.finish();
  return s;
}

Json vec_json(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }

Json opt_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json events_json(const std::vector<TimedEvent>& events) {
  Json out = Json::array();
  for (const auto& e : events) out.push_back(Json{{"epoch_s", e.epoch_s}, {"type", e.type}});
  return out;
}

Json to_json(const Scenario& s) {
  Json j;
  j["seed"] = s.seed;
  j["body"] = {{"mu", s.body.mu}, {"re", s.body.re}, {"j2", s.body.j2}};

  Json stages = Json::array();
  for (const auto& st : s.transfer.stages) {
    stages.push_back({{"label", st.label}, {"isp_s", st.isp}, {"m0_kg", st.m0}, {"mf_kg", st.mf}});
  }
  j["transfer"] = {{"r1_m", s.transfer.r1_m},
                   {"r2_m", s.transfer.r2_m},
                   {"target_inclination_deg", s.transfer.target_inclination_deg},
                   {"gravity_loss_mps", s.transfer.gravity_loss_mps},
                   {"required_dv_mps", s.transfer.required_dv_mps},
                   {"stages", stages}};
  j["insertion_errors"] = {
      {"misalignment_sigma_deg", s.insertion_errors.misalignment_sigma_deg},
      {"velocity_error_per_deg_mps", s.insertion_errors.velocity_error_per_deg_mps},
      {"timing_sigma_s", s.insertion_errors.timing_sigma_s}};
  j["tolerances"] = {{"sma_m", s.tolerances.sma_m},
                     {"ecc_max", s.tolerances.ecc_max},
                     {"inc_deg", s.tolerances.inc_deg}};
  j["trim"] = {{"band_low_mps", s.trim.band_low_mps},
               {"band_high_mps", s.trim.band_high_mps},
               {"linear_factor", s.trim.linear_factor}};

  const auto& a = s.adcs;
  Json inertia = Json::array();
  for (int r = 0; r < 3; ++r) {
    inertia.push_back(Json::array({a.inertia_kgm2(r, 0), a.inertia_kgm2(r, 1), a.inertia_kgm2(r, 2)}));
  }
  const auto& c = a.sensors;
  Json adcs;
  adcs["enabled"] = a.enabled;
  adcs["dt_s"] = a.dt_s;
  adcs["duration_s"] = a.duration_s;
  adcs["telemetry_interval_s"] = a.telemetry_interval_s;
  adcs["inertia_kgm2"] = inertia;
  adcs["controller"] = to_string(a.controller);
  adcs["gains"] = {{"kp", vec_json(a.gains.kp)},
                   {"ki", vec_json(a.gains.ki)},
                   {"kd", vec_json(a.gains.kd)},
                   {"integrator_limit", a.gains.integrator_limit}};
  adcs["lqr"] = {{"q_attitude", vec_json(a.lqr.q_attitude)},
                 {"q_rate", vec_json(a.lqr.q_rate)},
                 {"r", vec_json(a.lqr.r)}};
  adcs["wheels"] = {{"max_torque_nm", a.wheels.max_torque},
                    {"max_momentum_nms", a.wheels.max_momentum}};
  adcs["magnetorquers"] = {{"max_dipole_am2", a.magnetorquers.max_dipole},
                           {"dump_gain", a.dump_gain}};
  adcs["safe_hold"] = {{"kp", a.safe_hold.kp},
                       {"kd", a.safe_hold.kd},
                       {"max_torque_nm", a.safe_hold.max_torque_nm},
                       {"thruster_lever_arm_m", a.safe_hold.thruster_lever_arm_m},
                       {"thruster_isp_s", a.safe_hold.thruster_isp_s}};
  adcs["supervisor"] = {{"rate_limit_deg_s", a.supervisor.rate_limit_deg_s},
                        {"dump_enter_fraction", a.supervisor.dump_enter_fraction},
                        {"dump_exit_fraction", a.supervisor.dump_exit_fraction},
                        {"divergence_sigma_deg", a.supervisor.divergence_sigma_deg},
                        {"divergence_rejections", a.supervisor.divergence_rejections}};
  adcs["sensors"] = {{"star_tracker_sigma_rad", c.star_tracker_sigma_rad},
                     {"gyro_noise_sigma_rad_s", c.gyro_noise_sigma_rad_s},
                     {"gyro_bias_walk_sigma", c.gyro_bias_walk_sigma},
                     {"gyro_initial_bias_rad_s", vec_json(c.gyro_initial_bias_rad_s)},
                     {"sun_sensor_sigma_deg", c.sun_sensor_sigma_deg},
                     {"earth_sensor_sigma_deg", c.earth_sensor_sigma_deg},
                     {"magnetometer_sigma_t", c.magnetometer_sigma_t},
                     {"star_tracker_rate_hz", c.star_tracker_rate_hz},
                     {"gyro_rate_hz", c.gyro_rate_hz},
                     {"sun_sensor_rate_hz", c.sun_sensor_rate_hz},
                     {"earth_sensor_rate_hz", c.earth_sensor_rate_hz},
                     {"magnetometer_rate_hz", c.magnetometer_rate_hz}};
  adcs["initial_pointing_error_deg"] = a.initial_pointing_error_deg;
  adcs["initial_knowledge_error_deg"] = a.initial_knowledge_error_deg;
  adcs["initial_rate_deg_s"] = vec_json(a.initial_rate_deg_s);
  adcs["disturbance_torque_nm"] = vec_json(a.disturbance_torque_nm);
  adcs["sun_direction"] = vec_json(a.sun_direction);
  adcs["faults"] = events_json(a.faults);
  adcs["ground_commands"] = events_json(a.ground_commands);
  j["adcs"] = adcs;

  const auto& k = s.stationkeeping;
  j["stationkeeping"] = {
      {"enabled", k.enabled},
      {"window_halfwidth_deg", k.window_halfwidth_deg},
      {"inclination_drift_deg_per_year", k.inclination_drift_deg_per_year},
      {"propellant_kg", k.propellant_kg},
      {"isp_s", k.isp_s},
      {"dry_mass_kg", k.dry_mass_kg},
      {"monitor_duration_s", k.monitor_duration_s},
      {"sample_interval_s", k.sample_interval_s},
      {"step_s", k.step_s},
      {"horizon_s", k.horizon_s},
      {"perturbations",
       {{"j2", k.perturbations.j2},
        {"srp_accel_mps2", k.perturbations.srp_accel_mps2},
        {"lunisolar_accel_mps2", k.perturbations.lunisolar_accel_mps2}}},
      {"lifetime_years", k.lifetime_years},
      {"sma_adjustment_m", k.sma_adjustment_m}};

  const auto& cc = s.constellation;
  j["constellation"] = {{"num_planes", cc.num_planes},
                        {"sats_per_plane", cc.sats_per_plane},
                        {"inclination_deg", cc.inclination_deg},
                        {"semi_major_axis_m", cc.semi_major_axis_m},
                        {"raan_spacing_deg", opt_json(cc.raan_spacing_deg)},
                        {"phase_offset_deg", opt_json(cc.phase_offset_deg)},
                        {"lat_step_deg", cc.lat_step_deg},
                        {"lon_step_deg", cc.lon_step_deg},
                        {"mask_deg", cc.mask_deg},
                        {"duration_s", opt_json(cc.duration_s)},
                        {"step_s", cc.step_s}};
  return j;
}

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ScenarioError(field, what);
}

bool finite3(const Vec3& v) { return v.all_finite(); }

// Runs a module validator and re-labels its complaint with the scenario path.
template <class F>
void check_module(const std::string& field, F&& f) {
  try {
    f();
  } catch (const ScenarioError&) {
    throw;
  } catch (const Error& e) {
    throw ScenarioError(field, e.what());
  }
}

void validate_events(const std::vector<TimedEvent>& events, const std::string& path,
                     const std::set<std::string>& allowed) {
  for (std::size_t k = 0; k < events.size(); ++k) {
    const std::string p = path + "[" + std::to_string(k) + "]";
    require(std::isfinite(events[k].epoch_s) && events[k].epoch_s >= 0.0, p + ".epoch_s",
            "must be a non-negative time");
    require(allowed.count(events[k].type) > 0, p + ".type", "unsupported event type '" + events[k].type + "'");
  }
}

}  // namespace

void Scenario::validate() const {
  check_module("body", [&] { body.validate(); });

  const auto& t = transfer;
  require(t.r1_m > body.re, "transfer.r1_m", "must exceed the body radius");
  require(t.r2_m > body.re, "transfer.r2_m", "must exceed the body radius");
  require(t.target_inclination_deg >= 0.0 && t.target_inclination_deg <= 180.0,
          "transfer.target_inclination_deg", "must lie in [0, 180]");
  require(t.gravity_loss_mps >= 0.0, "transfer.gravity_loss_mps", "must be non-negative");
  require(t.required_dv_mps >= 0.0, "transfer.required_dv_mps", "must be non-negative");
  require(!t.stages.empty(), "transfer.stages", "at least one stage is required");
  for (std::size_t k = 0; k < t.stages.size(); ++k) {
    const std::string p = "transfer.stages[" + std::to_string(k) + "]";
    require(t.stages[k].isp > 0.0, p + ".isp_s", "must be positive");
    require(t.stages[k].mf > 0.0, p + ".mf_kg", "must be positive");
    require(t.stages[k].m0 >= t.stages[k].mf, p + ".m0_kg", "must be >= mf_kg");
  }

  const auto& e = insertion_errors;
  require(e.misalignment_sigma_deg >= 0.0, "insertion_errors.misalignment_sigma_deg", "must be >= 0");
  require(e.velocity_error_per_deg_mps >= 0.0, "insertion_errors.velocity_error_per_deg_mps",
          "must be >= 0");
  require(e.timing_sigma_s >= 0.0, "insertion_errors.timing_sigma_s", "must be >= 0");

  check_module("tolerances", [&] { tolerances.to_tolerances().validate(); });
  require(trim.band_low_mps >= 0.0 && trim.band_high_mps > trim.band_low_mps, "trim.band_high_mps",
          "band must satisfy 0 <= low < high");
  require(trim.linear_factor >= 1.0, "trim.linear_factor", "must be >= 1");

  const auto& a = adcs;
  require(a.dt_s > 0.0, "adcs.dt_s", "must be positive");
  require(a.duration_s >= 0.0, "adcs.duration_s", "must be non-negative");
  require(a.telemetry_interval_s >= a.dt_s, "adcs.telemetry_interval_s", "must be >= dt_s");
  check_module("adcs.inertia_kgm2", [&] { (void)InertiaSpec(a.inertia_kgm2); });
  check_module("adcs.gains", [&] { a.gains.validate(); });
  for (const auto& [v, name] : {std::pair{a.lqr.q_attitude, "q_attitude"}, {a.lqr.q_rate, "q_rate"}}) {
    require(finite3(v) && v.x >= 0.0 && v.y >= 0.0 && v.z >= 0.0, std::string("adcs.lqr.") + name,
            "weights must be finite and non-negative");
  }
  require(finite3(a.lqr.r) && a.lqr.r.x > 0.0 && a.lqr.r.y > 0.0 && a.lqr.r.z > 0.0, "adcs.lqr.r",
          "weights must be positive");
  check_module("adcs.wheels", [&] { a.wheels.validate(); });
  check_module("adcs.magnetorquers", [&] { a.magnetorquers.validate(); });
  require(a.dump_gain > 0.0, "adcs.magnetorquers.dump_gain", "must be positive");
  require(a.safe_hold.kp >= 0.0, "adcs.safe_hold.kp", "must be >= 0");
  require(a.safe_hold.kd > 0.0, "adcs.safe_hold.kd", "must be positive");
  require(a.safe_hold.max_torque_nm > 0.0, "adcs.safe_hold.max_torque_nm", "must be positive");
  require(a.safe_hold.thruster_lever_arm_m > 0.0, "adcs.safe_hold.thruster_lever_arm_m",
          "must be positive");
  require(a.safe_hold.thruster_isp_s > 0.0, "adcs.safe_hold.thruster_isp_s", "must be positive");
  check_module("adcs.supervisor", [&] { a.supervisor.to_config().validate(); });
  require(a.supervisor.divergence_sigma_deg > 0.0, "adcs.supervisor.divergence_sigma_deg",
          "must be positive");
  require(a.supervisor.divergence_rejections >= 1, "adcs.supervisor.divergence_rejections",
          "must be >= 1");
  check_module("adcs.sensors", [&] { a.sensors.to_suite().validate(); });
  require(a.sensors.gyro_rate_hz * a.dt_s <= 1.0 + 1e-9, "adcs.sensors.gyro_rate_hz",
          "gyro period must be >= dt_s");
  require(a.initial_pointing_error_deg >= 0.0 && a.initial_pointing_error_deg < 180.0,
          "adcs.initial_pointing_error_deg", "must lie in [0, 180)");
  require(a.initial_knowledge_error_deg >= 0.0 && a.initial_knowledge_error_deg < 180.0,
          "adcs.initial_knowledge_error_deg", "must lie in [0, 180)");
  require(finite3(a.initial_rate_deg_s), "adcs.initial_rate_deg_s", "must be finite");
  require(finite3(a.disturbance_torque_nm), "adcs.disturbance_torque_nm", "must be finite");
  require(finite3(a.sun_direction) && a.sun_direction.norm() > 0.0, "adcs.sun_direction",
          "must be a non-zero vector");
  validate_events(a.faults, "adcs.faults", {"wheel_fault", "estimator_divergence"});
  validate_events(a.ground_commands, "adcs.ground_commands", {"resume_nominal"});

  const auto& k = stationkeeping;
  require(k.window_halfwidth_deg > 0.0, "stationkeeping.window_halfwidth_deg", "must be positive");
  require(k.inclination_drift_deg_per_year >= 0.0, "stationkeeping.inclination_drift_deg_per_year",
          "must be >= 0");
  check_module("stationkeeping", [&] { k.to_budget().validate(); });
  require(k.monitor_duration_s > 0.0, "stationkeeping.monitor_duration_s", "must be positive");
  require(k.sample_interval_s > 0.0 && k.sample_interval_s * 2.0 <= k.monitor_duration_s,
          "stationkeeping.sample_interval_s", "must be positive and allow at least two samples");
  require(k.step_s > 0.0, "stationkeeping.step_s", "must be positive");
  require(k.horizon_s > 0.0, "stationkeeping.horizon_s", "must be positive");
  check_module("stationkeeping.perturbations", [&] { k.perturbations.to_config().validate(); });
  require(k.lifetime_years >= 0.0, "stationkeeping.lifetime_years", "must be >= 0");
  require(k.sma_adjustment_m >= 0.0, "stationkeeping.sma_adjustment_m", "must be >= 0");

  const auto& c = constellation;
  check_module("constellation", [&] { c.to_spec().validate(); });
  require(c.lat_step_deg > 0.0, "constellation.lat_step_deg", "must be positive");
  require(c.lon_step_deg > 0.0, "constellation.lon_step_deg", "must be positive");
  require(c.mask_deg >= 0.0 && c.mask_deg < 90.0, "constellation.mask_deg", "must lie in [0, 90)");
  require(!c.duration_s || *c.duration_s >= 0.0, "constellation.duration_s", "must be >= 0");
  require(c.step_s > 0.0, "constellation.step_s", "must be positive");
}

Scenario parse_scenario(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t k = 0; k < end; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream msg;
    msg << "syntax error at line " << line << ", column " << col;
    throw ScenarioError("", msg.str());
  }
  Scenario s = from_json(root);
  s.validate();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("", "cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string dump_scenario(const Scenario& s) { return to_json(s).dump(2) + "\n"; }

void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ScenarioError("", "cannot write scenario file '" + path + "'");
  out << dump_scenario(s);
}

}  // namespace gpsim
