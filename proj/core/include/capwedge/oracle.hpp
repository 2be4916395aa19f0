#pragma once

#include <vector>

#include "capwedge/curve.hpp"
#include "capwedge/model.hpp"

// Independent verification path: discretizes the constrained energy
//   E(rho) = (g/3) int rho^3 sin(theta) dtheta
//          + sigma int sqrt(rho^2 + rho'^2) dtheta
//          - gamma_jump (rho(theta_a) + rho(theta_b))
// on theta in [theta2, pi - theta1] with the volume constraint
//   (1/2) int rho^2 dtheta = V,
// and minimizes it by projected gradient descent with a multiplicative
// volume projection. The Lagrange multiplier estimate is compared against the
// shooting pressure P0.
namespace capwedge::oracle {

struct PolarGrid {
  std::vector<double> theta;  // N uniform nodes on [theta2, pi - theta1]
  std::vector<double> rho;    // N positive radii
  double multiplier = 0.0;
};

struct MinimizeOptions {
  double grad_tol = 1e-6;     // constrained-gradient norm target
  long max_iterations = 100000;
  double step_factor = 1e-2;  // initial step = step_factor * V / theta-range
  bool cascade = true;        // coarse-to-fine warm start for large grids
  int cascade_base = 64;
};

struct MinimizeResult {
  PolarGrid grid;
  double multiplier = 0.0;
  long iterations = 0;
  double grad_norm = 0.0;
  bool converged = false;
};

// Uniform grid with constant rho matching the target volume. n >= 16.
PolarGrid constant_grid(const FluidParams& params, int n);

// Grid interpolated from a shooting solution's polar samples.
PolarGrid grid_from_state(const SteadyState& state, int n);

double energy(const PolarGrid& grid, const FluidParams& params);

// Exact gradient of the discretized energy (trapezoid weights, central
// differences for rho', one-sided at the ends).
std::vector<double> energy_gradient(const PolarGrid& grid, const FluidParams& params);

double volume_of(const PolarGrid& grid);

MinimizeResult minimize(const FluidParams& params, PolarGrid init,
                        const MinimizeOptions& opts = {});

}  // namespace capwedge::oracle
