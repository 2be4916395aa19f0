#include <doctest.h>

#include <cmath>

#include "capwedge/error.hpp"
#include "capwedge/model.hpp"
#include "test_support.hpp"

using namespace capwedge;
using testsupport::kPi;

TEST_CASE("contact config: zero interfacial jump") {
  FluidParams p;
  p.sigma = 1.0;
  p.gamma_jump = 0.0;
  p.theta1 = kPi / 3.0;
  p.theta2 = kPi / 6.0;
  p.volume = 1.0;
  ContactConfig c = derive_contact_config(p);
  CHECK(c.gamma == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(c.psi1 == doctest::Approx(kPi / 6.0).epsilon(1e-14));
  CHECK(c.psi2 == doctest::Approx(-kPi / 3.0).epsilon(1e-14));
  CHECK(c.regime == Regime::OppositeMax);
}

TEST_CASE("contact config: boundary wetting clamps to gamma = pi/2") {
  FluidParams p;
  p.sigma = 1.0;
  p.gamma_jump = -1.0;
  p.theta1 = kPi / 4.0;
  p.theta2 = kPi / 4.0;
  p.volume = 1.0;
  ContactConfig c = derive_contact_config(p);
  CHECK(c.gamma == doctest::Approx(kPi / 2.0).epsilon(1e-15));
  CHECK(c.psi1 == doctest::Approx(3.0 * kPi / 4.0).epsilon(1e-14));
  CHECK(c.psi2 == doctest::Approx(-3.0 * kPi / 4.0).epsilon(1e-14));
  CHECK(c.regime == Regime::OppositeMax);
}

TEST_CASE("contact config: strong positive jump gives the same-sign regime") {
  FluidParams p;
  p.sigma = 1.0;
  p.gamma_jump = 0.9;
  p.theta1 = kPi / 2.0;
  p.theta2 = 0.2;
  p.volume = 1.0;
  ContactConfig c = derive_contact_config(p);
  // frozen from a 40-digit evaluation of asin and the angle formulas
  CHECK(c.gamma == doctest::Approx(-1.1197695149986342).epsilon(1e-15));
  CHECK(c.psi1 == doctest::Approx(-1.1197695149986342).epsilon(1e-14));
  CHECK(c.psi2 == doctest::Approx(-0.25102681179626243).epsilon(1e-13));
  CHECK(c.regime == Regime::SameSign);
  CHECK(classify_regime(c, p) == Regime::SameSign);
}

TEST_CASE("regime classification by sign pattern") {
  ContactConfig c;
  FluidParams p;
  p.theta1 = 1.0;
  p.theta2 = 0.9;

  c.psi1 = kPi / 6.0;
  c.psi2 = -kPi / 3.0;
  c.regime = Regime::OppositeMax;
  CHECK(classify_regime(c, p) == Regime::OppositeMax);

  c.psi1 = -0.3;
  c.psi2 = -0.2;
  c.regime = Regime::SameSign;
  p.gamma_jump = 0.5;
  CHECK(classify_regime(c, p) == Regime::SameSign);

  c.psi1 = -0.3;
  c.psi2 = 0.2;
  c.regime = Regime::OppositeMin;
  CHECK(classify_regime(c, p) == Regime::OppositeMin);
}

TEST_CASE("invalid parameters are rejected with the violated constraint") {
  FluidParams p;
  p.theta1 = 0.0;  // violates 0 < theta1
  p.theta2 = 0.5;
  CHECK_THROWS_AS(validate_params(p), SolverError);
  p.theta1 = 1.0;
  p.theta2 = 2.5;  // violates theta1 + theta2 < pi
  CHECK_THROWS_AS(validate_params(p), SolverError);
  p.theta2 = 0.5;
  p.gamma_jump = 1.5;  // violates |gamma_jump| <= sigma
  CHECK_THROWS_AS(validate_params(p), SolverError);
  p.gamma_jump = 0.0;
  p.volume = -1.0;
  CHECK_THROWS_AS(validate_params(p), SolverError);
}

TEST_CASE("closed-form slope angles reproduce the sine formulas") {
  testsupport::ConfigGen gen(12345);
  for (int i = 0; i < 200; ++i) {
    FluidParams p;
    p.sigma = gen.uniform(0.5, 2.0);
    p.g = gen.uniform(0.5, 2.0);
    p.theta1 = gen.uniform(0.05, 1.5);
    p.theta2 = gen.uniform(0.05, std::min(1.5, kPi - p.theta1 - 0.05));
    p.gamma_jump = gen.uniform(-1.0, 1.0) * p.sigma;
    p.volume = 1.0;
    ContactConfig c = derive_contact_config(p);
    const double q = p.gamma_jump / p.sigma;
    const double root = std::sqrt(std::max(0.0, 1.0 - q * q));
    // sin psi1 = cos(theta1 - gamma), sin psi2 = -cos(theta2 - gamma) expanded
    // in the interfacial ratio
    const double sin1 = (-q) * std::sin(p.theta1) + root * std::cos(p.theta1);
    const double sin2 = q * std::sin(p.theta2) - root * std::cos(p.theta2);
    CHECK(std::fabs(std::sin(c.psi1) - sin1) < 1e-12);
    CHECK(std::fabs(std::sin(c.psi2) - sin2) < 1e-12);
  }
}

TEST_CASE("equal wall angles give exactly mirrored slopes") {
  testsupport::ConfigGen gen(777);
  for (int i = 0; i < 50; ++i) {
    FluidParams p;
    p.theta1 = gen.uniform(0.1, 1.5);
    p.theta2 = p.theta1;
    p.gamma_jump = gen.uniform(-0.99, 0.99);
    p.volume = 1.0;
    ContactConfig c = derive_contact_config(p);
    CHECK(c.psi1 == -c.psi2);  // bit-exact
  }
}

TEST_CASE("acute-wall same-sign pattern forces a positive jump and negative slopes") {
  testsupport::ConfigGen gen(424242);
  for (int i = 0; i < 50; ++i) {
    FluidParams p = gen.same_sign();
    ContactConfig c = derive_contact_config(p);
    REQUIRE(c.regime == Regime::SameSign);
    if (p.theta2 <= p.theta1 && p.theta1 <= kPi / 2.0) {
      CHECK(p.gamma_jump > 0.0);
      CHECK(c.psi1 < 0.0);
      CHECK(c.psi2 < 0.0);
      CHECK_NOTHROW(classify_regime(c, p));
    }
  }
}
