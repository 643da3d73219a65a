#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lion/engine.hpp"
#include "lion/metrics.hpp"
#include "lion/power_select.hpp"

namespace lion {

/// One row per sample:
/// index,kind,y0..y{d-1},nn_distance,distance_percentile,accuracy,baseline,kl
/// (absent metrics are left empty).
std::string format_report_csv(const EvalReport& report);

/// Aggregate block as a JSON object.
std::string format_report_summary_json(const EvalReport& report);

/// "p,error" header followed by the curve.
std::string format_power_curve_csv(const PowerCurve& curve);

/// Mapped coordinates with provenance: y0..y{d-1},kind,group_id.
std::string format_outcomes_csv(const std::vector<MapOutcome>& outcomes);
std::vector<MapOutcome> parse_outcomes_csv(std::string_view text);

/// Coordinates only, one row per outcome, no header.
Matrix outcomes_matrix(const std::vector<MapOutcome>& outcomes);

}  // namespace lion
