#include "capwedge/model.hpp"

#include <cmath>
#include <sstream>

#include "capwedge/error.hpp"

namespace capwedge {

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void fail(const std::string& constraint, double value) {
  std::ostringstream os;
  os << "invalid FluidParams: violated \"" << constraint << "\" (value " << value << ")";
  throw SolverError(ErrorKind::InvalidParams, os.str());
}

}  // namespace

void validate_params(const FluidParams& p) {
  if (!(p.g > 0.0) || !std::isfinite(p.g)) fail("g > 0", p.g);
  if (!(p.sigma > 0.0) || !std::isfinite(p.sigma)) fail("sigma > 0", p.sigma);
  if (!(p.volume >= 0.0) || !std::isfinite(p.volume)) fail("volume >= 0", p.volume);
  if (!(p.theta1 > 0.0 && p.theta1 < kPi)) fail("0 < theta1 < pi", p.theta1);
  if (!(p.theta2 > 0.0 && p.theta2 < kPi)) fail("0 < theta2 < pi", p.theta2);
  if (!(p.theta1 + p.theta2 < kPi)) fail("theta1 + theta2 < pi", p.theta1 + p.theta2);
  if (!std::isfinite(p.gamma_jump)) fail("|gamma_jump| <= sigma", p.gamma_jump);
  // Allow a 1e-12 slack before rejecting: boundary contact angles are
  // physically meaningful limits and get clamped below.
  if (std::fabs(p.gamma_jump) > p.sigma * (1.0 + 1e-12)) {
    fail("|gamma_jump| <= sigma", p.gamma_jump / p.sigma);
  }
}

ContactConfig derive_contact_config(const FluidParams& p) {
  validate_params(p);

  double ratio = -p.gamma_jump / p.sigma;
  if (ratio > 1.0) ratio = 1.0;
  if (ratio < -1.0) ratio = -1.0;

  ContactConfig c;
  c.gamma = std::asin(ratio);
  c.psi1 = c.gamma + kPi / 2.0 - p.theta1;
  // theta1 == theta2 forces psi2 = -psi1 exactly; keep that identity bit-exact
  // so symmetric configs stay symmetric downstream.
  c.psi2 = (p.theta1 == p.theta2) ? -c.psi1 : -c.gamma - kPi / 2.0 + p.theta2;

  if (c.psi1 > 0.0 && c.psi2 < 0.0) {
    c.regime = Regime::OppositeMax;
  } else if (c.psi1 < 0.0 && c.psi2 > 0.0) {
    c.regime = Regime::OppositeMin;
  } else {
    c.regime = Regime::SameSign;  // includes either angle exactly zero
  }
  c.psi1_is_larger = (c.psi1 >= c.psi2);
  return c;
}

Regime classify_regime(const ContactConfig& c, const FluidParams& p) {
  if (c.regime == Regime::SameSign && p.theta2 <= p.theta1 && p.theta1 <= kPi / 2.0) {
    // In this angle range the same-sign pattern can only come with a positive
    // interfacial jump and both slopes nonpositive.
    const bool consistent = (p.gamma_jump > 0.0 || (c.psi1 == 0.0 && c.psi2 == 0.0)) &&
                            c.psi1 <= 0.0 && c.psi2 <= 0.0;
    if (!consistent) {
      std::ostringstream os;
      os << "same-sign regime inconsistent with acute-wall sign constraints: psi1=" << c.psi1
         << " psi2=" << c.psi2 << " gamma_jump=" << p.gamma_jump;
      throw SolverError(ErrorKind::InvalidParams, os.str());
    }
  }
  return c.regime;
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::OppositeMax: return "opposite-max";
    case Regime::OppositeMin: return "opposite-min";
    case Regime::SameSign: return "same-sign";
  }
  return "unknown";
}

}  // namespace capwedge
