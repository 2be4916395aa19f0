#pragma once

namespace capwedge {

struct SolveOptions {
  int curve_samples = 512;       // output samples per segment, uniform in psi
  double quad_tol = 1e-10;       // absolute quadrature tolerance
  double volume_tol_abs = 1e-8;  // shooting accepts |V(x*) - V| <= max(abs, rel*V)
  double volume_tol_rel = 1e-8;
  double param_tol = 1e-12;      // bisection interval width tolerance
  int max_bisections = 200;
  double bracket_seed = 1e-3;    // first apex-height magnitude tried
  int prescan_samples = 256;     // root scan resolution when monotonicity is unproven
  int threshold_scan = 128;      // case-2 branch scan resolution
  double golden_tol = 1e-10;     // threshold refinement tolerance
};

}  // namespace capwedge
