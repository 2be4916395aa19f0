#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "capwedge/curve.hpp"
#include "capwedge/model.hpp"
#include "capwedge/options.hpp"

// Same-sign contact angles (section-3 geometry). Two solution families:
//   interior branch: slope angle has an interior extremum psi_m attained at
//     shifted height 0; two psi-parametrized segments with
//     y = +-sqrt((2 sigma/g)(cos psi_m - cos psi));
//   boundary branch: slope angle monotone between the walls, parametrized by
//     the contact height at the extremal-slope end.
// Both-positive sign patterns are handled by the wall-swap x-mirror; the
// public per-branch operations below expect the canonical pattern
// psi1 <= 0 and psi2 <= 0.
namespace capwedge::case_same {

struct InteriorContacts {
  double u1 = 0.0;  // left contact height, >= 0
  double u2 = 0.0;  // right contact height, <= 0
  double r1 = 0.0;  // x_m - x1
  double r2 = 0.0;  // x2 - x_m
};

struct InteriorResult {
  double volume = 0.0;
  double P0 = 0.0;
  double x_m = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  InteriorContacts contacts;
};

struct BoundaryResult {
  double volume = 0.0;
  double P0 = 0.0;
  double u1 = 0.0;
  double u2 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  bool increasing_psi = false;  // psi2 > psi1 orientation
};

struct BranchThresholds {
  double v_m = 0.0;  // infimum of the interior-branch volume
  double v_1 = 0.0;  // supremum of the boundary-branch volume
  bool overlap = false;
};

struct ShootOutcome {
  std::vector<SteadyState> states;  // interior roots first, then boundary
  std::size_t principal = 0;
  std::vector<std::string> diagnostics;
};

// psi_m in [max(psi1,psi2), 0); the seam value is allowed for continuity.
InteriorContacts interior_contacts(double psi_m, const ContactConfig& config,
                                   const FluidParams& params, double quad_tol = 1e-10);

double interior_apex_x(const InteriorContacts& ic, const FluidParams& params);

InteriorResult interior_volume(double psi_m, const ContactConfig& config,
                               const FluidParams& params, double quad_tol = 1e-10);

// Canonical decreasing orientation (psi1 >= psi2): shooting parameter is the
// left contact height u1 <= 0.
BoundaryResult boundary_contacts(double u1, const ContactConfig& config,
                                 const FluidParams& params, double quad_tol = 1e-10);

double boundary_volume(double u1, const ContactConfig& config, const FluidParams& params,
                       double quad_tol = 1e-10);

// Generic boundary family used by the solver: t >= 0 is the magnitude of the
// contact height at the extremal-slope end (left for psi1 >= psi2, right
// otherwise); t = 0 is the seam shared with the interior branch.
BoundaryResult boundary_geometry(double t, const ContactConfig& config,
                                 const FluidParams& params, double quad_tol = 1e-10);
double boundary_volume_at(double t, const ContactConfig& config, const FluidParams& params,
                          double quad_tol = 1e-10);

BranchThresholds thresholds(const ContactConfig& config, const FluidParams& params,
                            const SolveOptions& opts = {});

SteadyState assemble_interior_state(double psi_m, const ContactConfig& config,
                                    const FluidParams& params, const SolveOptions& opts = {});
SteadyState assemble_boundary_state(double t, const ContactConfig& config,
                                    const FluidParams& params, const SolveOptions& opts = {});

// Branch-aware shooting: returns every root found on the applicable branches;
// at least one solution exists for every V > 0.
ShootOutcome shoot(const FluidParams& params, const ContactConfig& config,
                   const SolveOptions& opts = {});

// Rebuild a state from the shoot parameter as reported in a SteadyState
// (handles the both-positive mirror and the flat configuration).
SteadyState rebuild_interior(double psi_m_reported, const ContactConfig& config,
                             const FluidParams& params, const SolveOptions& opts = {});
SteadyState rebuild_boundary(double contact_height_reported, const ContactConfig& config,
                             const FluidParams& params, const SolveOptions& opts = {});

}  // namespace capwedge::case_same
