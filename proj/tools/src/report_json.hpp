#pragma once

#include <nlohmann/json.hpp>

#include "gpsim/mission.hpp"

namespace gpsim::cli {

using Json = nlohmann::ordered_json;

Json to_json(const HohmannPlan& plan);
Json to_json(const MissionReport& report);
Json to_json(const MonteCarloSummary& summary);

/// "field,value" lines from a nested object, keys joined with '.'.
std::string flat_csv(const Json& j);

}  // namespace gpsim::cli
