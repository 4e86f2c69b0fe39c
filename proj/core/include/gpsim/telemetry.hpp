#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "gpsim/math.hpp"
#include "gpsim/orbital.hpp"

namespace gpsim {

inline constexpr int kTelemetryVersion = 1;

/// One time-series row of a mission run. Angles are stored in radians and
/// written in degrees.
struct TelemetryRecord {
  double epoch = 0.0;  // s since scenario start
  UnitQuaternion q_true;
  Vec3 omega;  // rad/s, body
  UnitQuaternion q_est;
  Vec3 bias_est;        // rad/s
  Vec3 wheel_momentum;  // N m s
  Vec3 torque;          // N m, actuator torque on the body
  KeplerianElements elements;
  double pointing_error = 0.0;  // rad
  std::string mode;
  double fuel_kg = 0.0;
  std::vector<std::string> flags;

  friend bool operator==(const TelemetryRecord&, const TelemetryRecord&) = default;
};

enum class TelemetryFormat { Csv, Json };

/// Column names in output order.
const std::vector<std::string>& telemetry_columns();

/// Throws DataError unless epochs strictly increase and NumericalError if a
/// row carries a non-finite value.
void check_telemetry(const std::vector<TelemetryRecord>& rows);

/// CSV: a "# telemetry_version=N" line, the header, then one line per row
/// (numbers as %.12g, flags joined with '|'). Checks the rows first.
void write_telemetry_csv(std::ostream& out, const std::vector<TelemetryRecord>& rows);
/// JSON object {"telemetry_version", "columns", "records": [{column: value}]}.
void write_telemetry_json(std::ostream& out, const std::vector<TelemetryRecord>& rows);
void write_telemetry(std::ostream& out, const std::vector<TelemetryRecord>& rows,
                     TelemetryFormat format);
std::string telemetry_to_string(const std::vector<TelemetryRecord>& rows,
                                TelemetryFormat format = TelemetryFormat::Csv);

}  // namespace gpsim
