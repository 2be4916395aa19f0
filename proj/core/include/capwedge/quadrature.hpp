#pragma once

#include <functional>

namespace capwedge::quadrature {

inline constexpr double kDefaultTol = 1e-10;
inline constexpr int kDefaultMaxPanels = 1 << 20;

enum class Kernel { Cos, Sin, One };

// The two denominator families of the profile integrals:
//   ShiftedRadical: sqrt(u_m^2 + (2 sigma/g)(1 - cos phi))
//   ApexRadical:    sqrt(offset^2 + (2 sigma/g)(cos psi_m - cos phi))
// ApexRadical with offset = 0 has the inverse-square-root endpoint singularity
// at phi = psi_m; a positive offset (boundary-branch integrals) keeps it regular.
enum class DenominatorKind { ShiftedRadical, ApexRadical };

struct IntegralSpec {
  Kernel kernel = Kernel::Cos;
  DenominatorKind denominator = DenominatorKind::ShiftedRadical;
  double param = 0.0;   // u_m for ShiftedRadical, psi_m for ApexRadical
  double offset = 0.0;  // ApexRadical height offset, >= 0
  double sigma = 1.0;
  double g = 1.0;
  double a = 0.0;  // lower bound (radians)
  double b = 0.0;  // upper bound (radians)
  double tol = kDefaultTol;
  int max_panels = kDefaultMaxPanels;
};

// Evaluates integral_a^b numerator(phi)/denominator(phi) dphi for a spec whose
// denominator is bounded away from zero on [a, b].
double integrate_regular(const IntegralSpec& spec);

// Same integral with one bound equal to the singular angle psi_m (ApexRadical,
// offset 0), evaluated by substituting t^2 = cos(psi_m) - cos(phi) near the
// singular end. Throws DivergentIntegral when psi_m = 0 with a non-Sin kernel.
// Also valid for offset > 0 (no singularity), where it must agree with
// integrate_regular.
double integrate_apex_singular(const IntegralSpec& spec);

// Adaptive Gauss-Kronrod 7/15 engine. Deterministic for fixed inputs; throws
// ToleranceNotMet when the panel budget is exhausted. Absolute tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol = kDefaultTol, int max_panels = kDefaultMaxPanels);

// integral_a^{psi_m} numerator(phi) / sqrt(offset^2 + (2 sigma/g)(cos psi_m -
// cos phi)) dphi for an arbitrary numerator and psi_m <= 0, a < psi_m, via the
// same endpoint substitution as integrate_apex_singular. Used for the nested
// volume integrals whose numerator is itself quadrature-valued.
double integrate_apex_weighted(const std::function<double(double)>& numerator, double psi_m,
                               double offset, double sigma, double g, double a,
                               double tol = kDefaultTol, int max_panels = kDefaultMaxPanels);

// Kernel/denominator evaluators shared with the solver modules.
double denominator_value(const IntegralSpec& spec, double phi);
double numerator_value(Kernel k, double phi);

}  // namespace capwedge::quadrature
