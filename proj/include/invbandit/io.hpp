#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "invbandit/bandit.hpp"
#include "invbandit/demonstrators.hpp"
#include "invbandit/estimators.hpp"

namespace invbandit {

/// Shortest decimal that round-trips the exact double.
std::string format_double(double value);

// Trajectory JSON: {algorithm, T, alpha, width_scale, actions:[int],
// pull_counts:[int]} with 1-based arm indices. Loading re-derives and
// validates the pull counts against the action sequence.
nlohmann::json trajectory_to_json(const Trajectory& trajectory);
Trajectory trajectory_from_json(const nlohmann::json& j);

// Instance JSON: {means:[...], model:{type, variance}}.
nlohmann::json instance_to_json(const BanditInstance& instance);
BanditInstance instance_from_json(const nlohmann::json& j);

// Report CSV rows (arm, tau, pulls_at_switch, estimate); errored arms keep
// their row with the value cells empty. The JSON mirror carries error names.
void write_report_csv(const EstimateReport& report, std::ostream& out);
nlohmann::json report_to_json(const EstimateReport& report);

nlohmann::json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace invbandit
