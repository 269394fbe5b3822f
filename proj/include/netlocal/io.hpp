#pragma once

// JSON and CSV serialization. Every JSON document carries
//   "schema": "<document type>", "schema_version": kSchemaVersion.
//
// Behavior JSON:
//   { schema: "netlocal.behavior", n, kind, input_radix[], output_radix[],
//     input_count, outcome_count, order: "inputs-major, outcomes-minor",
//     p: [ ... input_count * outcome_count numbers ... ] }
// Behavior CSV: a "# netlocal.behavior kind=<k> n=<n> schema_version=<v>"
// line, then the header x_index,a_index,x,a,p where x and a are per-party
// values joined with '-'.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "netlocal/analysis.hpp"
#include "netlocal/behavior.hpp"
#include "netlocal/hvmodels.hpp"
#include "netlocal/network.hpp"

namespace netlocal::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json behavior_to_json(const Behavior& b);
Behavior behavior_from_json(const json& j);

void write_behavior_csv(std::ostream& os, const Behavior& b);
Behavior read_behavior_csv(std::istream& is);

/// n, kind, alphas and the explicit operators as [[[re, im], ...], ...].
json scenario_to_json(const NetworkScenario& s);
/// Operators are optional; missing ones come from the standard settings.
NetworkScenario scenario_from_json(const json& j);

/// Signed and absolute I, J, bound values and flags.
json report_to_json(const CorrelatorReport& r);
json model_to_json(const NLocalModel& m);
json lp_to_json(const LPResult& r, bool include_weights = false);
json decomposition_to_json(const DecompositionReport& r);
json threshold_to_json(const ThresholdResult& r);
json figure4_to_json(const Figure4Report& r);
json montecarlo_to_json(const MonteCarloReport& r);

/// Two-column I,J CSV with a "curve" column: quantum, p_i, p_j, tightness,
/// local_boundary, nlocal_boundary.
void write_figure4_csv(std::ostream& os, const Figure4Report& r);

json read_json_file(const std::string& path);
/// Reads JSON or CSV, chosen by extension (.csv) or content.
Behavior read_behavior_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace netlocal::io
