#include "gpsim/telemetry.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gpsim/error.hpp"

namespace gpsim {

namespace {

// Numeric columns in output order, mode and flags excluded.
std::vector<double> numeric_values(const TelemetryRecord& r) {
  const auto& el = r.elements;
  return {r.epoch,
          r.q_true.w(), r.q_true.x(), r.q_true.y(), r.q_true.z(),
          r.omega.x, r.omega.y, r.omega.z,
          r.q_est.w(), r.q_est.x(), r.q_est.y(), r.q_est.z(),
          r.bias_est.x, r.bias_est.y, r.bias_est.z,
          r.wheel_momentum.x, r.wheel_momentum.y, r.wheel_momentum.z,
          r.torque.x, r.torque.y, r.torque.z,
          el.a, el.e, rad2deg(el.i), rad2deg(el.raan), rad2deg(el.argp),
          rad2deg(el.true_anomaly),
          rad2deg(r.pointing_error)};
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) {
    if (!out.empty()) out += '|';
    out += f;
  }
  return out;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

const std::vector<std::string>& telemetry_columns() {
  static const std::vector<std::string> cols{
      "epoch_s", "qw", "qx", "qy", "qz", "wx", "wy", "wz",
      "est_qw", "est_qx", "est_qy", "est_qz", "bias_x", "bias_y", "bias_z",
      "hx", "hy", "hz", "torque_x", "torque_y", "torque_z",
      "sma_m", "ecc", "inc_deg", "raan_deg", "argp_deg", "true_anomaly_deg",
      "pointing_err_deg", "mode", "fuel_kg", "flags"};
  return cols;
}

void check_telemetry(const std::vector<TelemetryRecord>& rows) {
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (k > 0 && !(rows[k].epoch > rows[k - 1].epoch)) {
      throw DataError("telemetry epochs must strictly increase (row " + std::to_string(k) + ")");
    }
    const auto vals = numeric_values(rows[k]);
    for (double v : vals) {
      if (!std::isfinite(v)) {
        throw NumericalError("non-finite telemetry value at epoch " + format_number(rows[k].epoch));
      }
    }
    if (!std::isfinite(rows[k].fuel_kg)) {
      throw NumericalError("non-finite fuel at epoch " + format_number(rows[k].epoch));
    }
  }
}

void write_telemetry_csv(std::ostream& out, const std::vector<TelemetryRecord>& rows) {
  check_telemetry(rows);
  out << "# telemetry_version=" << kTelemetryVersion << '\n';
  const auto& cols = telemetry_columns();
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
  out << '\n';
  for (const auto& r : rows) {
    for (double v : numeric_values(r)) out << format_number(v) << ',';
    out << r.mode << ',' << format_number(r.fuel_kg) << ',' << join_flags(r.flags) << '\n';
  }
}

void write_telemetry_json(std::ostream& out, const std::vector<TelemetryRecord>& rows) {
  check_telemetry(rows);
  using Json = nlohmann::ordered_json;
  const auto& cols = telemetry_columns();
  Json records = Json::array();
  for (const auto& r : rows) {
    Json rec = Json::object();
    const auto vals = numeric_values(r);
    for (std::size_t c = 0; c < vals.size(); ++c) rec[cols[c]] = vals[c];
    rec["mode"] = r.mode;
    rec["fuel_kg"] = r.fuel_kg;
    rec["flags"] = r.flags;
    records.push_back(std::move(rec));
  }
  Json doc;
  doc["telemetry_version"] = kTelemetryVersion;
  doc["columns"] = cols;
  doc["records"] = std::move(records);
  out << doc.dump(1) << '\n';
}

void write_telemetry(std::ostream& out, const std::vector<TelemetryRecord>& rows,
                     TelemetryFormat format) {
  if (format == TelemetryFormat::Json) {
    write_telemetry_json(out, rows);
  } else {
    write_telemetry_csv(out, rows);
  }
}

std::string telemetry_to_string(const std::vector<TelemetryRecord>& rows, TelemetryFormat format) {
  std::ostringstream os;
  write_telemetry(os, rows, format);
  return os.str();
}

}  // namespace gpsim
