#include "report_json.hpp"

#include <cstdio>

#include "gpsim/cli.hpp"

namespace gpsim::cli {

namespace {

Json elements_json(const KeplerianElements& el) {
  return {{"sma_m", el.a},
          {"ecc", el.e},
          {"inc_deg", rad2deg(el.i)},
          {"raan_deg", rad2deg(el.raan)},
          {"argp_deg", rad2deg(el.argp)},
          {"true_anomaly_deg", rad2deg(el.true_anomaly)}};
}

Json channel_json(const ToleranceChannel& c) {
  return {{"deviation", c.deviation}, {"limit", c.limit}, {"pass", c.pass}};
}

Json percentiles_json(const Percentiles& p) {
  return {{"count", p.count}, {"mean", p.mean}, {"p05", p.p05},
          {"p50", p.p50},     {"p95", p.p95},   {"max", p.max}};
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
    return buf;
  }
  return v.dump();
}

void flatten(const Json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else if (j.is_array()) {
    for (std::size_t k = 0; k < j.size(); ++k) flatten(j[k], prefix + "." + std::to_string(k), out);
  } else {
    out += prefix + "," + scalar_text(j) + "\n";
  }
}

}  // namespace

Json to_json(const HohmannPlan& p) {
  return {{"r1_m", p.r1},
          {"r2_m", p.r2},
          {"a_transfer_m", p.a_transfer},
          {"e_transfer", p.e_transfer},
          {"dv1_mps", p.dv1},
          {"dv2_mps", p.dv2},
          {"total_dv_mps", p.total_dv()},
          {"time_of_flight_s", p.time_of_flight}};
}

Json to_json(const MissionReport& r) {
  Json stages = Json::array();
  for (const auto& s : r.launch.stages) stages.push_back({{"label", s.label}, {"dv_mps", s.dv}});
  const auto& ins = r.insertion;
  Json modes = Json::array();
  for (const auto& [t, m] : r.adcs.mode_changes) modes.push_back({{"epoch_s", t}, {"mode", m}});
  Json events = Json::array();
  for (const auto& e : r.events) {
    events.push_back({{"epoch_s", e.epoch}, {"kind", e.kind}, {"message", e.message}});
  }
  const auto& sk = r.stationkeeping;
  return {
      {"seed", r.seed},
      {"completed", r.completed},
      {"launch",
       {{"stages", stages},
        {"gross_dv_mps", r.launch.gross_dv},
        {"gravity_loss_mps", r.launch.gravity_loss},
        {"net_dv_mps", r.launch.net_dv},
        {"required_dv_mps", r.launch.required_dv},
        {"shortfall", r.launch.shortfall}}},
      {"transfer", to_json(r.plan)},
      {"insertion",
       {{"target", elements_json(ins.target)},
        {"achieved", elements_json(ins.achieved)},
        {"timing_error_s", ins.timing_error_s},
        {"velocity_error_mps",
         {{"radial", ins.velocity_error.x},
          {"along_track", ins.velocity_error.y},
          {"cross_track", ins.velocity_error.z}}},
        {"gate",
         {{"pass", ins.gate.pass},
          {"sma", channel_json(ins.gate.sma)},
          {"ecc", channel_json(ins.gate.ecc)},
          {"inc", channel_json(ins.gate.inc)}}},
        {"trim_required", ins.trim_required},
        {"trim_dv_mps", ins.trim_dv},
        {"trim_channels_mps",
         {{"sma", ins.trim.sma_dv}, {"inc", ins.trim.inc_dv}, {"ecc", ins.trim.ecc_dv}}},
        {"trim_in_band", ins.trim_in_band},
        {"trim_applied", ins.trim_applied},
        {"unrecoverable", ins.unrecoverable}}},
      {"adcs",
       {{"ran", r.adcs.ran},
        {"duration_s", r.adcs.duration_s},
        {"pointing_rms_deg", r.adcs.pointing_rms_deg},
        {"pointing_max_deg", r.adcs.pointing_max_deg},
        {"final_pointing_deg", r.adcs.final_pointing_deg},
        {"knowledge_rms_deg", r.adcs.knowledge_rms_deg},
        {"thruster_fuel_kg", r.adcs.thruster_fuel_kg},
        {"rejected_updates", r.adcs.rejected_updates},
        {"saturated_steps", r.adcs.saturated_steps},
        {"final_mode", r.adcs.final_mode},
        {"mode_changes", modes}}},
      {"stationkeeping",
       {{"ran", sk.ran},
        {"longitude_offset_deg", rad2deg(sk.drift.longitude)},
        {"drift_rate_deg_per_day", rad2deg(sk.drift.drift_rate) * 86400.0},
        {"projected_offset_deg", rad2deg(sk.drift.projected_longitude)},
        {"maneuver_recommended", sk.drift.maneuver_recommended},
        {"maneuver_applied", sk.maneuver_applied},
        {"maneuver_dv_mps", sk.maneuver_dv},
        {"lifetime",
         {{"burns", static_cast<int>(sk.lifetime.burns.size())},
          {"total_dv_mps", sk.lifetime.total_dv},
          {"propellant_kg", sk.lifetime.propellant_used},
          {"depleted", sk.lifetime.depleted}}}}},
      {"fuel", {{"initial_kg", r.fuel_initial_kg}, {"final_kg", r.fuel_final_kg}, {"used_kg", r.fuel_used_kg()}}},
      {"events", events}};
}

Json to_json(const MonteCarloSummary& s) {
  Json tally = Json::object();
  for (const auto& [k, v] : s.error_tally) tally[k] = v;
  return {{"runs", s.runs},
          {"gate_passes", s.gate_passes},
          {"gate_pass_rate", s.gate_pass_rate},
          {"gate_pass_stderr", s.gate_pass_stderr},
          {"trims_required", s.trims_required},
          {"trims_in_band", s.trims_in_band},
          {"trim_band_fraction", s.trim_band_fraction},
          {"unrecoverable", s.unrecoverable},
          {"trim_dv_mps", percentiles_json(s.trim_dv_mps)},
          {"pointing_rms_deg", percentiles_json(s.pointing_rms_deg)},
          {"fuel_used_kg", percentiles_json(s.fuel_used_kg)},
          {"errors", tally}};
}

std::string flat_csv(const Json& j) {
  std::string out = "field,value\n";
  flatten(j, "", out);
  return out;
}

std::string report_to_json(const MissionReport& report) { return to_json(report).dump(2) + "\n"; }
std::string summary_to_json(const MonteCarloSummary& summary) {
  return to_json(summary).dump(2) + "\n";
}

}  // namespace gpsim::cli
