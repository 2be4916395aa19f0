#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "capwedge/curve.hpp"
#include "capwedge/model.hpp"
#include "capwedge/options.hpp"

// Opposite-sign contact angles (section-2 geometry): the shifted profile is a
// single psi-parametrized arc through an interior apex at (x_m, u_m), with
// closed forms
//   y(psi)  = -sqrt(u_m^2 + (2 sigma/g)(1 - cos psi))       (maximum, u_m < 0)
//   x(psi)  = x_m - integral_0^psi sigma cos(phi)/(g |y(phi)|) dphi
// and the volume split into the two curve strips plus wall triangles and the
// central rectangle. The minimum case mirrors the sign of y.
namespace capwedge::case_opposite {

struct ContactData {
  double u1 = 0.0;
  double u2 = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
};

struct ShootOutcome {
  std::vector<SteadyState> states;  // all roots found, ascending shoot parameter
  std::size_t principal = 0;
  std::vector<std::string> diagnostics;
};

// Point of the maximum-branch profile at slope angle psi in [psi2, psi1].
std::array<double, 2> profile_point(double u_m, double x_m, double psi,
                                    const ContactConfig& config, const FluidParams& params);

// Contact heights and horizontal half-widths for apex height u_m < 0.
ContactData contact_data(double u_m, const ContactConfig& config, const FluidParams& params);

// Apex abscissa from the wall-line relations; finite for vertical walls.
double apex_x(const ContactData& cd, const FluidParams& params);

// Wall-vertex height y0 in the shifted frame (so P0 = -g*y0), taken from the
// better-conditioned wall and cross-checked against the other one.
double wall_vertex_height(const ContactData& cd, double x_m, const FluidParams& params);

double pressure(const ContactData& cd, double x_m, const FluidParams& params);

// Five-piece volume decomposition for the maximum branch.
VolumeBreakdown volume(double u_m, const ContactConfig& config, const FluidParams& params,
                       double quad_tol = 1e-10);

// Total enclosed area of the minimum branch (u_m > 0), lobe decomposition in
// the returned breakdown (v3 = v5 = 0).
VolumeBreakdown volume_min(double u_m, const ContactConfig& config, const FluidParams& params,
                           double quad_tol = 1e-10);

// Full state assembly at a given apex height (maximum branch).
SteadyState assemble_max_state(double u_m, const ContactConfig& config,
                               const FluidParams& params, const SolveOptions& opts = {});

SteadyState assemble_min_state(double u_m, const ContactConfig& config,
                               const FluidParams& params, const SolveOptions& opts = {});

// Volume shooting for the maximum branch: bisection when gamma_jump < 0
// (monotone volume), otherwise a uniform pre-scan locating every root.
ShootOutcome shoot(const FluidParams& params, const ContactConfig& config,
                   const SolveOptions& opts = {});

// Mirrored minimum-branch construction (psi1 < 0 < psi2); result is residual-
// validated and tagged reduced-confidence. Throws ValidationFailure when the
// residual gate fails.
SteadyState solve_opposite_min(const FluidParams& params, const ContactConfig& config,
                               const SolveOptions& opts = {});

}  // namespace capwedge::case_opposite
