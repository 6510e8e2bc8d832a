#pragma once

#include "seqtc/planner.hpp"

#include "json.hpp"

#include <iosfwd>
#include <string>

namespace seqtc {

/* Malformed input document; message carries field-level diagnostics. */
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Scenario document:
 *   { "d": 3, "mode": "general" | "even",
 *     "obstacles": [[...], ...],
 *     "robots": [ {"targets": [[...], ...]}, ... ],
 *     "options": {"tau_proj": ..., "epsilon_connector": ..., "tolerance": ...} }
 * The options block is optional and merged into the defaults. */
Scenario scenario_from_json(const nlohmann::json& doc, PlannerOptions* options = nullptr);
Scenario load_scenario(const std::string& file, PlannerOptions* options = nullptr);
nlohmann::json scenario_to_json(const Scenario& sc);

/* Path document: {"schedule": [...], "robots": [{"breakpoints": [{"t":..,"x":[..]},..]},..],
 *                 "cell": {"c":..,"mu":..,"nu":..,"sigma":[["o1",..],..]}, "delta_C": ..} */
nlohmann::json path_to_json(const PlannedPath& path);
PlannedPath path_from_json(const nlohmann::json& doc);
PlannedPath load_path(const std::string& file);

nlohmann::json report_to_json(const ValidationReport& rep);
nlohmann::json tc_report_to_json(const TcReport& rep);
nlohmann::json cell_to_json(const CellDescriptor& cell);

/* Sampled trajectories as CSV rows "t,robot,x1,...,xd". */
void write_csv_samples(std::ostream& os, const PlannedPath& path, int samples_per_interval);

} // namespace seqtc
