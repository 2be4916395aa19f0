#pragma once

#include <string>

namespace capwedge {

// Physical inputs for the wedge problem. Angles in radians; theta1 is the
// inclination of the left wall against the horizontal, theta2 the right wall.
// gamma_jump is the difference of the solid-vapor and solid-fluid interfacial
// energies per unit length.
struct FluidParams {
  double g = 1.0;           // gravitational acceleration, > 0
  double sigma = 1.0;       // surface tension, > 0
  double gamma_jump = 0.0;  // interfacial energy difference, |gamma_jump| <= sigma
  double theta1 = 0.0;      // left wall inclination, (0, pi)
  double theta2 = 0.0;      // right wall inclination, (0, pi), theta1+theta2 < pi
  double volume = 0.0;      // prescribed fluid area, >= 0
};

enum class Regime {
  OppositeMax,  // psi1 > 0, psi2 < 0: profile has an interior height maximum
  OppositeMin,  // psi1 < 0, psi2 > 0: profile has an interior height minimum
  SameSign,     // psi1 * psi2 >= 0: slope angle extremal structure of section-3 type
};

// Contact angles derived from the physical inputs. gamma in [-pi/2, pi/2] with
// sin(gamma) = -gamma_jump/sigma; psi1, psi2 are the free-surface slope angles
// at the left and right contact points.
struct ContactConfig {
  double gamma = 0.0;
  double psi1 = 0.0;
  double psi2 = 0.0;
  Regime regime = Regime::OppositeMax;
  // For SameSign, records which contact slope is larger (true: psi1 >= psi2).
  bool psi1_is_larger = true;
};

// Throws SolverError{InvalidParams} naming the violated constraint.
void validate_params(const FluidParams& params);

ContactConfig derive_contact_config(const FluidParams& params);

// Total function on valid configs. For SameSign with theta2 <= theta1 <= pi/2
// also asserts the sign pattern forced there (gamma_jump > 0, both psi < 0).
Regime classify_regime(const ContactConfig& config, const FluidParams& params);

const char* regime_name(Regime r);

}  // namespace capwedge
