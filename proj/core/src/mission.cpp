#include "gpsim/mission.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <thread>

#include "gpsim/error.hpp"

namespace gpsim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Every consumer of randomness owns a stream so that changing one model
// does not reshuffle the draws of another.
enum class Stream : std::uint64_t { Insertion = 1, AdcsInit = 2, Sensors = 3, Gyro = 4 };

std::mt19937_64 make_stream(std::uint64_t seed, Stream id) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(id))));
}

double standard_normal(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return n(rng);
}

Vec3 random_unit(std::mt19937_64& rng) {
  for (;;) {
    const Vec3 v{standard_normal(rng), standard_normal(rng), standard_normal(rng)};
    if (v.norm() > 1e-6) return v.normalized();
  }
}

int steps_per(double period, double dt) {
  return std::max(1, static_cast<int>(std::lround(period / dt)));
}

KeplerianElements target_orbit(const Scenario& s) {
  return {s.transfer.r2_m, 0.0, deg2rad(s.transfer.target_inclination_deg), 0.0, 0.0, 0.0};
}

// Mutable state threaded through the phases of one run.
struct Run {
  const Scenario& s;
  MissionReport rep;
  std::vector<TelemetryRecord> tel;
  FuelBudget fuel;
  TelemetryRecord last;  // attitude fields carried into rows of later phases
  std::vector<std::string> pending_flags;

  explicit Run(const Scenario& sc) : s(sc), fuel(sc.stationkeeping.to_budget()) {
    rep.seed = sc.seed;
    rep.fuel_initial_kg = fuel.propellant;
    rep.fuel_final_kg = fuel.propellant;
  }

  void event(double epoch, const std::string& kind, const std::string& msg) {
    rep.events.push_back({epoch, kind, msg});
  }

  void flag(const std::string& f) {
    if (std::find(pending_flags.begin(), pending_flags.end(), f) == pending_flags.end()) {
      pending_flags.push_back(f);
    }
  }

  void emit(TelemetryRecord row) {
    row.fuel_kg = fuel.propellant;
    row.flags = std::move(pending_flags);
    pending_flags.clear();
    last = row;
    tel.push_back(std::move(row));
  }

  MissionResult finish() {
    rep.fuel_final_kg = fuel.propellant;
    return {std::move(rep), std::move(tel)};
  }
};

// ---------------------------------------------------------------- insertion

void insertion_phase(Run& run) {
  const Scenario& s = run.s;
  const BodyConstants& body = s.body;
  auto& rep = run.rep;
  auto& ins = rep.insertion;

  rep.launch = launch_budget(s.transfer.stages, s.transfer.gravity_loss_mps, s.transfer.required_dv_mps);
  if (rep.launch.shortfall) {
    run.event(0.0, "budget_shortfall",
              "net launch dv " + std::to_string(rep.launch.net_dv) + " m/s below required " +
                  std::to_string(rep.launch.required_dv) + " m/s");
    run.flag("launch_shortfall");
  }
  rep.plan = hohmann_plan(s.transfer.r1_m, s.transfer.r2_m, body);
  const double inc = deg2rad(s.transfer.target_inclination_deg);
  ins.target = target_orbit(s);

  // transfer ellipse in the target plane, perigee on the ascending node
  // line, arrival burn at apogee
  const bool raising = s.transfer.r2_m >= s.transfer.r1_m;
  const KeplerianElements transfer{rep.plan.a_transfer, rep.plan.e_transfer, inc, 0.0,
                                   raising ? 0.0 : kPi, kPi};
  const StateVector nominal = elements_to_state(transfer, body);
  const Vec3 burn_dir = raising ? nominal.velocity.normalized() : -nominal.velocity.normalized();

  auto rng = make_stream(s.seed, Stream::Insertion);
  const double z_t = standard_normal(rng);
  const double z_r = standard_normal(rng);
  const double z_n = standard_normal(rng);
  const auto& e = s.insertion_errors;
  ins.timing_error_s = e.timing_sigma_s * z_t;
  const double dv_r = e.velocity_error_per_deg_mps * e.misalignment_sigma_deg * z_r;
  const double dv_n = e.velocity_error_per_deg_mps * e.misalignment_sigma_deg * z_n;

  StateVector burn = nominal;
  if (ins.timing_error_s != 0.0) {
    burn = elements_to_state(advance_kepler(transfer, ins.timing_error_s, body), body);
  }
  const Vec3 r_hat = burn.position.normalized();
  const Vec3 n_hat = cross(burn.position, burn.velocity).normalized();
  const Vec3 dv = rep.plan.dv2 * burn_dir + dv_r * r_hat + dv_n * n_hat;
  const Vec3 v_after = burn.velocity + dv;
  const Vec3 t_hat = cross(n_hat, r_hat);
  const Vec3 v_circ = circular_speed(s.transfer.r2_m, body) * t_hat;
  ins.velocity_error = {dot(v_after - v_circ, r_hat), dot(v_after - v_circ, t_hat),
                        dot(v_after - v_circ, n_hat)};
  ins.achieved = state_to_elements({burn.position, v_after, 0.0}, body);
  ins.final_orbit = ins.achieved;

  const InsertionTolerances tol = s.tolerances.to_tolerances();
  ins.gate = check_insertion(ins.achieved, ins.target, tol);
  if (!ins.gate.pass) {
    ins.trim_required = true;
    run.flag("gate_fail");
    try {
      ins.trim = trim_dv_estimate(ins.achieved, ins.target, body, tol, s.trim.linear_factor);
      ins.trim_dv = ins.trim.total();
      ins.trim_in_band = ins.trim_dv >= s.trim.band_low_mps && ins.trim_dv <= s.trim.band_high_mps;
      if (ins.trim_in_band) run.flag("trim_band");
      try {
        run.fuel = apply_maneuver(run.fuel, ins.trim_dv);
        ins.trim_applied = true;
        run.flag("trim");
        KeplerianElements fixed = ins.target;
        fixed.true_anomaly = ins.achieved.argument_of_latitude();
        ins.final_orbit = fixed;
      } catch (const FuelDepletedError& err) {
        run.event(0.0, err.kind(), std::string("insertion trim: ") + err.what());
        run.flag("fuel_depleted");
      }
    } catch (const OutOfRangeError& err) {
      ins.unrecoverable = true;
      run.event(0.0, err.kind(), std::string("insertion gate unrecoverable: ") + err.what());
      run.flag("gate_unrecoverable");
    }
  }

  TelemetryRecord row;
  row.epoch = 0.0;
  const StateVector sv = elements_to_state(ins.final_orbit, body);
  row.q_true = nadir_pointing_target(sv, s.adcs.sun_direction.normalized());
  row.q_est = row.q_true;
  row.elements = ins.final_orbit;
  row.mode = "INSERTION";
  run.emit(row);
}

// ---------------------------------------------------------------- ADCS

struct AdcsEvents {
  struct Item {
    double epoch;
    std::string type;
    bool done = false;
  };
  std::vector<Item> items;

  explicit AdcsEvents(const AdcsConfig& a) {
    for (const auto& f : a.faults) items.push_back({f.epoch_s, f.type});
    for (const auto& c : a.ground_commands) items.push_back({c.epoch_s, c.type});
    std::stable_sort(items.begin(), items.end(),
                     [](const Item& x, const Item& y) { return x.epoch < y.epoch; });
  }
};

StateVector adcs_phase(Run& run, const StateVector& sv0) {
  const Scenario& s = run.s;
  const AdcsConfig& a = s.adcs;
  const BodyConstants& body = s.body;
  auto& sum = run.rep.adcs;

  const double dt = a.dt_s;
  const int steps = static_cast<int>(std::lround(a.duration_s / dt));
  const int n_tel = steps_per(a.telemetry_interval_s, dt);
  const InertiaSpec inertia(a.inertia_kgm2);
  const Mat3& I = inertia.matrix();
  const SensorSuite suite = a.sensors.to_suite();
  const PerturbationConfig pert = PerturbationConfig::j2_only();
  const Vec3 sun = a.sun_direction.normalized();
  const SupervisorConfig sup_cfg = a.supervisor.to_config();
  const Vec3 disturbance = a.disturbance_torque_nm;
  SafeHoldGains hold;
  hold.kp = a.safe_hold.kp;
  hold.kd = a.safe_hold.kd;
  hold.max_torque = a.safe_hold.max_torque_nm;
  const double thruster_ve = a.safe_hold.thruster_isp_s * kG0;

  Matrix3x6 k_lqr = Matrix3x6::Zero();
  if (a.controller == ControllerKind::Lqr) {
    LqrSpec spec{Matrix6::Zero(), Eigen::Matrix3d::Zero(), inertia};
    for (int i = 0; i < 3; ++i) {
      spec.Q(i, i) = a.lqr.q_attitude[i];
      spec.Q(i + 3, i + 3) = a.lqr.q_rate[i];
      spec.R(i, i) = a.lqr.r[i];
    }
    k_lqr = lqr_gain(spec).K;
  }

  const int n_gyro = steps_per(1.0 / suite.gyro_rate, dt);
  const int n_sensor[4] = {steps_per(1.0 / suite.star_tracker_rate, dt),
                           steps_per(1.0 / suite.sun_sensor_rate, dt),
                           steps_per(1.0 / suite.earth_sensor_rate, dt),
                           steps_per(1.0 / suite.magnetometer_rate, dt)};

  auto rng_init = make_stream(s.seed, Stream::AdcsInit);
  auto rng_sens = make_stream(s.seed, Stream::Sensors);
  auto rng_gyro = make_stream(s.seed, Stream::Gyro);

  StateVector sv = sv0;
  StateVector sv_next = propagate(sv, dt, dt, pert, body, sun);
  UnitQuaternion qt = nadir_pointing_target(sv, sun);
  UnitQuaternion qt_next = nadir_pointing_target(sv_next, sun);
  Vec3 wt = (qt.inverse() * qt_next).to_rotation_vector() / dt;  // target rate, target axes

  RigidBodyState truth;
  truth.epoch = sv0.epoch;
  truth.q = qt * UnitQuaternion::from_rotation_vector(random_unit(rng_init) *
                                                      deg2rad(a.initial_pointing_error_deg));
  truth.omega = quat_rotate_inverse(truth.q, quat_rotate(qt, wt)) +
                a.initial_rate_deg_s * kDeg;
  const UnitQuaternion q_est0 =
      truth.q * UnitQuaternion::from_rotation_vector(random_unit(rng_init) *
                                                     deg2rad(a.initial_knowledge_error_deg));
  EstimatorState est = EstimatorState::initial(q_est0, sv0.epoch);
  GyroModel gyro(suite, suite.gyro_initial_bias);

  ControlMode mode;
  mode.entry_epoch = sv0.epoch;
  Vec3 integral;
  // rate-integrating gyro: each reading is the mean rate over its sample
  // period, and the filter propagates over that same period
  const Matrix6 qn_gyro = process_noise(suite, n_gyro * dt);
  Vec3 gyro_reading = gyro.sample(truth.omega, n_gyro * dt, rng_gyro);
  Vec3 rate_sum;
  Vec3 sun_body = quat_rotate_inverse(truth.q, sun);
  AdcsEvents events(a);
  bool wheel_fault = false;
  bool injected_divergence = false;
  bool converged = false;
  int st_reject_streak = 0;
  bool thruster_dry = false;
  double sq_point = 0.0, sq_know = 0.0;
  long n_half = 0;
  Vec3 last_torque;

  const double div_sigma = deg2rad(a.supervisor.divergence_sigma_deg);
  const double half = 0.5 * a.duration_s;

  for (int k = 0; k < steps; ++k) {
    const double t_rel = k * dt;
    const double t = sv0.epoch + t_rel;

    bool any_due = false;
    for (int j = 0; j < 4; ++j) any_due = any_due || (k % n_sensor[j] == 0);
    if (any_due) {
      const ReferenceVectors refs{sun, dipole_field(sv.position, body), -sv.position.normalized()};
      const auto meas = simulate_measurements(truth, suite, refs, rng_sens);
      for (int j = 0; j < 4; ++j) {
        if (k % n_sensor[j] != 0) continue;
        const auto upd = ekf_update(est, meas[static_cast<std::size_t>(j)]);
        if (meas[static_cast<std::size_t>(j)].kind == MeasurementKind::SunVector) {
          sun_body = meas[static_cast<std::size_t>(j)].vector;
        }
        if (upd.rejected) {
          ++sum.rejected_updates;
          run.flag("update_rejected");
        }
        if (meas[static_cast<std::size_t>(j)].kind == MeasurementKind::StarTracker) {
          st_reject_streak = upd.rejected ? st_reject_streak + 1 : 0;
        }
        est = upd.state;
      }
    }

    // scheduled anomalies and ground commands
    bool resume = false;
    for (auto& ev : events.items) {
      if (ev.done || ev.epoch > t_rel + 1e-9) continue;
      ev.done = true;
      if (ev.type == "wheel_fault") {
        wheel_fault = true;
        run.flag("wheel_fault");
      } else if (ev.type == "estimator_divergence") {
        injected_divergence = true;
        run.flag("estimator_divergence");
      } else if (ev.type == "resume_nominal") {
        resume = true;
        run.flag("resume_nominal");
      }
    }
    if (resume) {
      wheel_fault = false;
      injected_divergence = false;
      st_reject_streak = 0;
    }

    const Vec3 omega_est = gyro_reading - est.bias_hat;
    const double sigma_att =
        std::sqrt(std::max({est.P(0, 0), est.P(1, 1), est.P(2, 2)}));
    if (sigma_att < div_sigma) converged = true;

    SupervisorTelemetry st;
    st.epoch = t;
    st.wheel_fault = wheel_fault;
    st.estimator_diverged = injected_divergence || (converged && sigma_att > div_sigma) ||
                            st_reject_streak >= a.supervisor.divergence_rejections;
    const Vec3 h = truth.wheel_momentum;
    st.wheel_momentum_fraction =
        std::max({std::abs(h.x), std::abs(h.y), std::abs(h.z)}) / a.wheels.max_momentum;
    st.rate_magnitude = omega_est.norm();
    st.resume_nominal_command = resume;
    const ControlMode next = mode_supervisor(mode, st, sup_cfg);
    if (next.mode != mode.mode) {
      sum.mode_changes.emplace_back(t, std::string(to_string(next.mode)) + ":" + next.reason);
      run.flag(std::string("mode_") + to_string(next.mode));
      if (next.mode == Mode::NominalPointing) integral = {};
    }
    mode = next;

    Vec3 ext = disturbance;
    Vec3 wheel_cmd;
    Vec3 torque;
    if (mode.mode == Mode::SafeHold) {
      Vec3 thr = safe_hold_torque(sun_body, gyro_reading, hold);
      const double impulse = (std::abs(thr.x) + std::abs(thr.y) + std::abs(thr.z)) /
                             a.safe_hold.thruster_lever_arm_m * dt;
      const double dm = impulse / thruster_ve;
      if (thruster_dry || dm > run.fuel.propellant) {
        if (!thruster_dry) {
          run.event(t, "fuel_depleted", "safe-hold thrusters out of propellant");
          run.flag("fuel_depleted");
        }
        thruster_dry = true;
        thr = {};
      } else {
        run.fuel.propellant -= dm;
        sum.thruster_fuel_kg += dm;
      }
      ext += thr;
      torque = thr;
    } else {
      const Vec3 e_att = attitude_error(est.q_hat, qt);
      const Vec3 w_ref = quat_rotate_inverse(est.q_hat, quat_rotate(qt, wt));
      const Vec3 e_rate = omega_est - w_ref;
      Vec3 tau_c;
      switch (a.controller) {
        case ControllerKind::Pd:
          tau_c = pd_torque(e_att, e_rate, a.gains);
          break;
        case ControllerKind::Pid: {
          const auto out = pid_torque(e_att, e_rate, integral, dt, a.gains);
          integral = out.integral;
          tau_c = out.torque;
          break;
        }
        case ControllerKind::Lqr:
          tau_c = lqr_torque(k_lqr, e_att, e_rate);
          break;
      }
      if (!wheel_fault) {
        wheel_cmd = -tau_c - cross(omega_est, I * omega_est + h);
      }
      torque = wheel_fault ? Vec3{} : tau_c;
      if (mode.mode == Mode::MomentumDump) {
        const Vec3 b_inertial = dipole_field(sv.position, body);
        const Vec3 b_model = quat_rotate_inverse(est.q_hat, b_inertial);
        const Vec3 b_true = quat_rotate_inverse(truth.q, b_inertial);
        const Vec3 m = momentum_dump_command(h, b_model, a.dump_gain, a.magnetorquers);
        const Vec3 tau_m = magnetorquer_torque(m, b_true, a.magnetorquers);
        ext += tau_m;
        torque += tau_m;
      }
    }

    const Vec3 omega_before = truth.omega;
    const auto res = step_attitude(truth, inertia, a.wheels, ext, wheel_cmd, dt);
    truth = res.state;
    rate_sum += 0.5 * (omega_before + truth.omega);
    if ((k + 1) % n_gyro == 0) {
      gyro_reading = gyro.sample(rate_sum / n_gyro, n_gyro * dt, rng_gyro);
      est = ekf_predict(est, gyro_reading, n_gyro * dt, qn_gyro);
      rate_sum = {};
    }
    if (res.wheel_saturated) {
      ++sum.saturated_steps;
      run.flag("wheel_saturated");
    }
    last_torque = torque;

    sv = sv_next;
    sv_next = propagate(sv, dt, dt, pert, body, sun);
    qt = qt_next;
    qt_next = nadir_pointing_target(sv_next, sun);
    wt = (qt.inverse() * qt_next).to_rotation_vector() / dt;

    const double t_end = (k + 1) * dt;
    const double point = angle_between(truth.q, qt);
    sum.final_pointing_deg = rad2deg(point);
    if (t_end > half) {
      const double know = attitude_estimation_error(est.q_hat, truth.q).norm();
      sq_point += point * point;
      sq_know += know * know;
      sum.pointing_max_deg = std::max(sum.pointing_max_deg, rad2deg(point));
      ++n_half;
    }

    if ((k + 1) % n_tel == 0) {
      TelemetryRecord row;
      row.epoch = sv0.epoch + t_end;
      row.q_true = truth.q;
      row.omega = truth.omega;
      row.q_est = est.q_hat;
      row.bias_est = est.bias_hat;
      row.wheel_momentum = truth.wheel_momentum;
      row.torque = last_torque;
      row.elements = state_to_elements(sv, body);
      row.pointing_error = point;
      row.mode = to_string(mode.mode);
      run.emit(row);
    }
  }

  sum.ran = true;
  sum.duration_s = steps * dt;
  if (n_half > 0) {
    sum.pointing_rms_deg = rad2deg(std::sqrt(sq_point / static_cast<double>(n_half)));
    sum.knowledge_rms_deg = rad2deg(std::sqrt(sq_know / static_cast<double>(n_half)));
  }
  sum.final_mode = to_string(mode.mode);
  // rows of later phases carry the final attitude state
  run.last.q_true = truth.q;
  run.last.omega = truth.omega;
  run.last.q_est = est.q_hat;
  run.last.bias_est = est.bias_hat;
  run.last.wheel_momentum = truth.wheel_momentum;
  run.last.pointing_error = angle_between(truth.q, qt);
  return sv;
}

// ---------------------------------------------------------------- station keeping

void stationkeeping_phase(Run& run, const StateVector& sv0) {
  const Scenario& s = run.s;
  const auto& k = s.stationkeeping;
  const BodyConstants& body = s.body;
  auto& sum = run.rep.stationkeeping;

  const auto samples = propagate_sampled(sv0, k.monitor_duration_s, k.step_s, k.sample_interval_s,
                                         k.perturbations.to_config(), body,
                                         s.adcs.sun_direction.normalized());
  std::vector<ElementSample> history;
  history.reserve(samples.size());
  for (const auto& smp : samples) {
    history.push_back({smp.epoch - sv0.epoch, state_to_elements(smp, body)});
  }

  SlotSpec slot;
  slot.target_longitude = history.front().elements.argument_of_latitude();
  slot.window_halfwidth = deg2rad(k.window_halfwidth_deg);
  slot.target_inclination = deg2rad(s.transfer.target_inclination_deg);
  slot.inclination_drift_rate = deg2rad(k.inclination_drift_deg_per_year);
  slot.nominal_sma = s.transfer.r2_m;

  sum.drift = longitude_drift_monitor(history, slot, body, k.horizon_s);
  sum.ran = true;

  for (std::size_t j = 1; j < history.size(); ++j) {
    const bool last_row = j + 1 == history.size();
    if (last_row) {
      if (sum.drift.maneuver_recommended) {
        try {
          run.fuel = apply_maneuver(run.fuel, sum.drift.dv);
          sum.maneuver_applied = true;
          sum.maneuver_dv = sum.drift.dv;
          run.flag("sk_maneuver");
        } catch (const FuelDepletedError& err) {
          run.event(samples[j].epoch, err.kind(), std::string("station-keeping trim: ") + err.what());
          run.flag("fuel_depleted");
        }
      }
      sum.lifetime = lifetime_schedule(run.fuel, slot, k.lifetime_years, k.sma_adjustment_m, body);
      if (sum.lifetime.depleted) {
        run.event(samples[j].epoch, "fuel_depleted",
                  "lifetime schedule exhausts propellant after " +
                      std::to_string(sum.lifetime.burns.size()) + " burns");
        run.flag("lifetime_fuel_depleted");
      }
    }
    TelemetryRecord row = run.last;
    row.epoch = samples[j].epoch;
    row.torque = {};
    row.elements = history[j].elements;
    row.mode = "STATIONKEEPING";
    run.emit(row);
  }
}

StateVector nominal_start(const Scenario& s) {
  return elements_to_state(target_orbit(s), s.body);
}

}  // namespace

bool MissionReport::has_event(const std::string& kind) const {
  return std::any_of(events.begin(), events.end(),
                     [&](const MissionEvent& e) { return e.kind == kind; });
}

MissionResult run_mission(const Scenario& s) {
  s.validate();
  Run run(s);
  insertion_phase(run);
  if (run.rep.insertion.unrecoverable) return run.finish();

  StateVector sv = elements_to_state(run.rep.insertion.final_orbit, s.body);
  if (s.adcs.enabled) sv = adcs_phase(run, sv);
  if (s.stationkeeping.enabled) stationkeeping_phase(run, sv);
  run.rep.completed = true;
  return run.finish();
}

MissionResult run_adcs(const Scenario& s) {
  s.validate();
  Run run(s);
  adcs_phase(run, nominal_start(s));
  run.rep.completed = true;
  return run.finish();
}

MissionResult run_stationkeeping(const Scenario& s) {
  s.validate();
  Run run(s);
  stationkeeping_phase(run, nominal_start(s));
  run.rep.completed = true;
  return run.finish();
}

std::uint64_t run_seed(std::uint64_t base_seed, int index) {
  if (index == 0) return base_seed;
  return splitmix64(base_seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(index));
}

Percentiles percentiles(std::vector<double> values) {
  Percentiles p;
  if (values.empty()) return p;
  std::sort(values.begin(), values.end());
  const auto at = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  p.p05 = at(0.05);
  p.p50 = at(0.50);
  p.p95 = at(0.95);
  p.max = values.back();
  double total = 0.0;
  for (double v : values) total += v;
  p.count = static_cast<int>(values.size());
  p.mean = total / static_cast<double>(values.size());
  return p;
}

MonteCarloSummary summarize_runs(const std::vector<MonteCarloRun>& runs) {
  std::vector<MonteCarloRun> sorted = runs;
  std::sort(sorted.begin(), sorted.end(),
            [](const MonteCarloRun& a, const MonteCarloRun& b) { return a.index < b.index; });

  MonteCarloSummary out;
  out.runs = static_cast<int>(sorted.size());
  std::vector<double> trims, pointing, fuel;
  for (const auto& r : sorted) {
    const auto& rep = r.report;
    if (rep.insertion.gate.pass) ++out.gate_passes;
    if (rep.insertion.trim_required) ++out.trims_required;
    if (rep.insertion.trim_in_band) ++out.trims_in_band;
    if (rep.insertion.unrecoverable) ++out.unrecoverable;
    if (rep.insertion.trim_required && !rep.insertion.unrecoverable) trims.push_back(rep.insertion.trim_dv);
    if (rep.adcs.ran) pointing.push_back(rep.adcs.pointing_rms_deg);
    fuel.push_back(rep.fuel_used_kg());
    for (const auto& e : rep.events) ++out.error_tally[e.kind];
  }
  if (out.runs > 0) {
    const double n = out.runs;
    out.gate_pass_rate = out.gate_passes / n;
    out.gate_pass_stderr = std::sqrt(out.gate_pass_rate * (1.0 - out.gate_pass_rate) / n);
    out.trim_band_fraction = out.trims_in_band / n;
  }
  out.trim_dv_mps = percentiles(std::move(trims));
  out.pointing_rms_deg = percentiles(std::move(pointing));
  out.fuel_used_kg = percentiles(std::move(fuel));
  return out;
}

std::vector<MonteCarloRun> monte_carlo_runs(const Scenario& s, int n_runs, unsigned threads) {
  if (n_runs < 1) throw DomainError("monte_carlo: n_runs must be >= 1");
  s.validate();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(n_runs));

  std::vector<MonteCarloRun> runs(static_cast<std::size_t>(n_runs));
  auto worker = [&](unsigned w) {
    for (int k = static_cast<int>(w); k < n_runs; k += static_cast<int>(threads)) {
      Scenario sk = s;
      sk.seed = run_seed(s.seed, k);
      MonteCarloRun& slot = runs[static_cast<std::size_t>(k)];
      slot.index = k;
      try {
        slot.report = run_mission(sk).report;
      } catch (const Error& e) {
        slot.report = MissionReport{};
        slot.report.seed = sk.seed;
        slot.report.events.push_back({0.0, e.kind(), e.what()});
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
  }
  return runs;
}

MonteCarloSummary monte_carlo(const Scenario& s, int n_runs, unsigned threads) {
  return summarize_runs(monte_carlo_runs(s, n_runs, threads));
}

}  // namespace gpsim
