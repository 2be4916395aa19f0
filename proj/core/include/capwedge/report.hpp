#pragma once

#include <string>

#include "capwedge/solver.hpp"

namespace capwedge {

// Deterministic JSON for a solve result: schema "capillary-steady/1", every
// floating-point value formatted with %.17g. include_curve controls whether
// the sampled curves are embedded.
std::string solve_result_json(const SolveResult& result, bool include_curve = true);

std::string residual_report_json(const ResidualReport& report);

// Case-2 thresholds report.
std::string thresholds_json(double v_m, double v_1, bool overlap);

}  // namespace capwedge
