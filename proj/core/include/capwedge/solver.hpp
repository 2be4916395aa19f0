#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "capwedge/curve.hpp"
#include "capwedge/model.hpp"
#include "capwedge/options.hpp"

namespace capwedge {

struct SolveResult {
  ContactConfig config;
  std::vector<SteadyState> states;  // at least one; principal first branch root
  std::size_t principal = 0;
  std::vector<std::string> diagnostics;
};

// Regime dispatch: derive the contact configuration, classify, and run the
// applicable branch solver. volume = 0 yields the degenerate empty state.
SolveResult solve(const FluidParams& params, const SolveOptions& opts = {});

// Rebuilds a state from its branch tag and shoot parameter (used by the
// validate path; the curve and residuals are recomputed from closed forms).
SteadyState rebuild_state(const FluidParams& params, Branch branch, double shoot_param,
                          const SolveOptions& opts = {});

}  // namespace capwedge
