#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "gpsim/mission.hpp"

namespace gpsim::cli {

/// Exit codes: 0 success, 1 runtime failure, 2 usage error. Failures print
/// one line "error: kind=<kind> [field=<path>] message=<text>" to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Name of the environment variable holding the default output directory.
inline constexpr const char* kOutputDirEnv = "GPSIM_OUTPUT_DIR";

std::string report_to_json(const MissionReport& report);
std::string summary_to_json(const MonteCarloSummary& summary);

}  // namespace gpsim::cli
