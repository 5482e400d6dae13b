#pragma once

#include "trustlam/analysis.hpp"
#include "trustlam/diagnostics.hpp"
#include "trustlam/machine.hpp"

#include <json.hpp>

#include <string>

namespace trustlam {

nlohmann::json diagnostic_to_json(const Diagnostic& d);
nlohmann::json trace_to_json(const Trace& tr);
nlohmann::json output_dist_to_json(const OutputDist& d);
nlohmann::json curve_to_json(const ConfidenceCurve& c);
nlohmann::json tree_to_json(const RTree& tree);

/// DOT rendering: node labels are printed terms, edge labels exact fractions.
std::string tree_to_dot(const RTree& tree);

}  // namespace trustlam
