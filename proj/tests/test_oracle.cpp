#include <doctest.h>

#include <cmath>

#include "capwedge/case_opposite.hpp"
#include "capwedge/error.hpp"
#include "capwedge/model.hpp"
#include "capwedge/oracle.hpp"
#include "test_support.hpp"

using namespace capwedge;
namespace orc = capwedge::oracle;
using testsupport::kPi;

namespace {

FluidParams wedge_params(double theta1, double theta2, double gamma_jump, double volume) {
  FluidParams p;
  p.sigma = 1.0;
  p.g = 1.0;
  p.theta1 = theta1;
  p.theta2 = theta2;
  p.gamma_jump = gamma_jump;
  p.volume = volume;
  return p;
}

}  // namespace

TEST_CASE("energy of a constant profile matches the closed form") {
  FluidParams p = wedge_params(0.7, 0.5, 0.0, 1.0);
  const double R = 1.3;
  const double range = kPi - p.theta1 - p.theta2;
  const double exact = (p.g / 3.0) * R * R * R * (std::cos(p.theta2) + std::cos(p.theta1)) +
                       p.sigma * R * range;

  orc::PolarGrid g = orc::constant_grid(p, 2048);
  for (double& r : g.rho) r = R;
  const double e = orc::energy(g, p);
  CHECK(std::fabs(e - exact) < 1e-6 * std::fabs(exact));

  // sigma = 0 monomial: E = (1/3)(cos theta2 + cos theta1) for rho = 1
  FluidParams p0 = p;
  p0.sigma = 1e-300;  // effectively zero surface term
  for (double& r : g.rho) r = 1.0;
  const double e0 = orc::energy(g, p0);
  // trapezoid discretization of the gravity term is O(N^-2); ~4e-8 at N=2048
  CHECK(std::fabs(e0 - (std::cos(p.theta2) + std::cos(p.theta1)) / 3.0) < 1e-6);
}

TEST_CASE("energy discretization refines at second order") {
  FluidParams p = wedge_params(0.9, 0.4, -0.3, 1.0);
  auto energy_at = [&](int n) {
    orc::PolarGrid g = orc::constant_grid(p, n);
    for (size_t i = 0; i < g.rho.size(); ++i) {
      g.rho[i] = 1.0 + 0.25 * std::sin(3.0 * g.theta[i]);
    }
    return orc::energy(g, p);
  };
  const double e1 = energy_at(256);
  const double e2 = energy_at(512);
  const double e3 = energy_at(1024);
  const double d12 = std::fabs(e1 - e2);
  const double d23 = std::fabs(e2 - e3);
  CHECK(d12 / d23 > 3.0);  // ~4 for O(N^-2)
}

TEST_CASE("volume of a constant profile is exact") {
  FluidParams p = wedge_params(1.0, 0.6, 0.0, 1.0);
  orc::PolarGrid g = orc::constant_grid(p, 64);
  const double range = kPi - p.theta1 - p.theta2;
  for (double& r : g.rho) r = 0.8;
  CHECK(orc::volume_of(g) == doctest::Approx(0.5 * 0.64 * range).epsilon(1e-14));

  g.rho[3] = 0.0;
  CHECK_THROWS_AS(orc::volume_of(g), SolverError);
}

TEST_CASE("analytic gradient matches central differences on random grids") {
  testsupport::ConfigGen gen(20240808);
  for (int trial = 0; trial < 20; ++trial) {
    FluidParams p;
    p.sigma = gen.uniform(0.5, 1.5);
    p.g = gen.uniform(0.5, 1.5);
    p.theta1 = gen.uniform(0.3, 1.2);
    p.theta2 = gen.uniform(0.3, 1.2);
    p.gamma_jump = gen.uniform(-0.9, 0.9) * p.sigma;
    p.volume = 1.0;
    const int n = 16 + static_cast<int>(gen.uniform(0.0, 32.0));
    orc::PolarGrid g = orc::constant_grid(p, n);
    for (double& r : g.rho) r = gen.uniform(0.4, 1.8);

    auto grad = orc::energy_gradient(g, p);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const double h = 1e-6 * std::max(1.0, std::fabs(g.rho[i]));
      orc::PolarGrid gp = g, gm = g;
      gp.rho[i] += h;
      gm.rho[i] -= h;
      const double fd = (orc::energy(gp, p) - orc::energy(gm, p)) / (2.0 * h);
      const double denom = std::max({std::fabs(grad[i]), std::fabs(fd), 1e-8});
      worst = std::max(worst, std::fabs(grad[i] - fd) / denom);
    }
    CAPTURE(trial);
    CHECK(worst < 1e-5);
  }
}

TEST_CASE("minimize: shooting solution is a near fixed point") {
  FluidParams p = wedge_params(kPi / 4.0, kPi / 4.0, -0.5, 1.0);
  ContactConfig c = derive_contact_config(p);
  SolveOptions sopts;
  sopts.curve_samples = 1024;
  auto shot = case_opposite::shoot(p, c, sopts);
  const SteadyState& st = shot.states[0];

  orc::PolarGrid init = orc::grid_from_state(st, 1024);
  orc::MinimizeOptions mopts;
  mopts.cascade = false;
  mopts.max_iterations = 10;
  auto res = orc::minimize(p, init, mopts);
  CHECK(res.iterations <= 10);
  double max_move = 0.0;
  for (size_t i = 0; i < init.rho.size(); ++i) {
    max_move = std::max(max_move, std::fabs(res.grid.rho[i] - init.rho[i]));
  }
  CHECK(max_move < 1e-3);
  // multiplier estimate against the shooting pressure
  CHECK(std::fabs(res.multiplier - st.P0) / st.P0 < 1e-2);
}

TEST_CASE("minimize: descent from a constant profile reaches the shooting curve") {
  FluidParams p = wedge_params(1.0, 0.6, -0.4, 0.8);
  ContactConfig c = derive_contact_config(p);
  auto shot = case_opposite::shoot(p, c);
  const SteadyState& st = shot.states[0];

  const int n = 256;
  orc::PolarGrid init = orc::constant_grid(p, n);
  orc::MinimizeOptions mopts;
  mopts.max_iterations = 60000;
  auto res = orc::minimize(p, init, mopts);

  // volume is preserved exactly by the multiplicative projection
  CHECK(std::fabs(orc::volume_of(res.grid) - p.volume) / p.volume < 1e-12);

  // compare curves in the physical frame
  std::vector<std::array<double, 2>> oracle_curve;
  for (size_t i = 0; i < res.grid.theta.size(); ++i) {
    oracle_curve.push_back({res.grid.rho[i] * std::cos(res.grid.theta[i]),
                            res.grid.rho[i] * std::sin(res.grid.theta[i])});
  }
  const double hd = testsupport::hausdorff_distance(oracle_curve, st.curve);
  CHECK(hd < 1e-3 * std::sqrt(p.volume));
  CHECK(std::fabs(res.multiplier - st.P0) / st.P0 < 2e-2);
}

TEST_CASE("minimize: energy decreases along accepted steps") {
  FluidParams p = wedge_params(0.8, 0.8, -0.2, 1.0);
  const int n = 128;
  orc::PolarGrid g = orc::constant_grid(p, n);
  double prev = orc::energy(g, p);
  orc::MinimizeOptions mopts;
  mopts.cascade = false;
  for (int k = 0; k < 6; ++k) {
    mopts.max_iterations = 50 * (k + 1);
    auto res = orc::minimize(p, orc::constant_grid(p, n), mopts);
    const double e = orc::energy(res.grid, p);
    CHECK(e <= prev + 1e-12);
    prev = e;
  }
}
