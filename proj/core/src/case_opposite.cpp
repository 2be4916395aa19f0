#include "capwedge/case_opposite.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "capwedge/error.hpp"
#include "capwedge/quadrature.hpp"
#include "capwedge/trig.hpp"
#include "internal_geometry.hpp"

namespace capwedge::case_opposite {

namespace q = capwedge::quadrature;
using internal::IncrementalIntegral;

namespace {

double radical(double u_m, double psi, const FluidParams& p) {
  const double coef = 2.0 * p.sigma / p.g;
  return std::sqrt(u_m * u_m + coef * one_minus_cos(psi));
}

// sigma/g * integral_a^b cos(phi)/radical dphi
double r_integral(double u_m, double a, double b, const FluidParams& p, double tol) {
  q::IntegralSpec spec;
  spec.kernel = q::Kernel::Cos;
  spec.denominator = q::DenominatorKind::ShiftedRadical;
  spec.param = u_m;
  spec.sigma = p.sigma;
  spec.g = p.g;
  spec.a = a;
  spec.b = b;
  spec.tol = tol;
  return (p.sigma / p.g) * q::integrate_regular(spec);
}

void require_negative_apex(double u_m) {
  if (!(u_m < 0.0)) {
    throw SolverError(ErrorKind::DomainError, "maximum branch requires u_m < 0");
  }
}

struct MaxGeometry {
  ContactData cd;
  double x_m;
  double x1, x2;
  double y0;
  double P0;
};

MaxGeometry max_geometry(double u_m, const ContactConfig& c, const FluidParams& p, double tol) {
  MaxGeometry geo;
  geo.cd = contact_data(u_m, c, p);
  geo.x_m = internal::apex_abscissa(geo.cd.r1, geo.cd.r2, geo.cd.u1, geo.cd.u2, p.theta1,
                                    p.theta2);
  geo.x1 = geo.x_m - geo.cd.r1;
  geo.x2 = geo.x_m + geo.cd.r2;
  geo.y0 = internal::vertex_height(geo.x1, geo.cd.u1, geo.x2, geo.cd.u2, p.theta1, p.theta2);
  geo.P0 = -p.g * geo.y0;
  (void)tol;
  return geo;
}

// Curve-strip areas V1 (psi in (0, psi1)) and V2 (psi in (psi2, 0)) as outer
// integrals of r(psi) * sigma*sin(psi)/(g*|y|), the inner distance memoized on
// the outer quadrature grid.
void strip_volumes(double u_m, const ContactConfig& c, const FluidParams& p, double tol,
                   double* v1, double* v2) {
  auto inner_kernel = [&](double phi) {
    return (p.sigma / p.g) * std::cos(phi) / radical(u_m, phi, p);
  };
  IncrementalIntegral signed_r(
      [&](double a, double b) { return q::integrate_adaptive(inner_kernel, a, b, 1e-13); },
      0.0);

  auto outer = [&](double psi) {
    // signed_r is negative for psi made of the right half; the product stays >= 0
    return signed_r(psi) * (p.sigma / p.g) * std::sin(psi) / radical(u_m, psi, p);
  };
  *v1 = (c.psi1 == 0.0) ? 0.0 : q::integrate_adaptive(outer, 0.0, c.psi1, tol);
  *v2 = (c.psi2 == 0.0) ? 0.0 : q::integrate_adaptive(outer, c.psi2, 0.0, tol);
}

SolveOptions with_tol(const SolveOptions& opts) { return opts; }

}  // namespace

std::array<double, 2> profile_point(double u_m, double x_m, double psi,
                                    const ContactConfig& c, const FluidParams& p) {
  require_negative_apex(u_m);
  const double lo = std::min(c.psi1, c.psi2);
  const double hi = std::max(c.psi1, c.psi2);
  if (psi < lo - 1e-15 || psi > hi + 1e-15) {
    throw SolverError(ErrorKind::DomainError, "psi outside the contact-angle range");
  }
  const double y = -radical(u_m, psi, p);
  const double x = x_m - r_integral(u_m, 0.0, psi, p, q::kDefaultTol);
  return {x, y};
}

ContactData contact_data(double u_m, const ContactConfig& c, const FluidParams& p) {
  require_negative_apex(u_m);
  ContactData cd;
  cd.u1 = -radical(u_m, c.psi1, p);
  cd.r1 = r_integral(u_m, 0.0, c.psi1, p, q::kDefaultTol);
  if (c.psi2 == -c.psi1) {
    // even integrand: the mirrored quantities are identical, keep them bit-exact
    cd.u2 = cd.u1;
    cd.r2 = cd.r1;
  } else {
    cd.u2 = -radical(u_m, c.psi2, p);
    cd.r2 = r_integral(u_m, c.psi2, 0.0, p, q::kDefaultTol);
  }
  return cd;
}

double apex_x(const ContactData& cd, const FluidParams& p) {
  return internal::apex_abscissa(cd.r1, cd.r2, cd.u1, cd.u2, p.theta1, p.theta2);
}

double wall_vertex_height(const ContactData& cd, double x_m, const FluidParams& p) {
  return internal::vertex_height(x_m - cd.r1, cd.u1, x_m + cd.r2, cd.u2, p.theta1, p.theta2);
}

double pressure(const ContactData& cd, double x_m, const FluidParams& p) {
  return -p.g * wall_vertex_height(cd, x_m, p);
}

VolumeBreakdown volume(double u_m, const ContactConfig& c, const FluidParams& p,
                       double quad_tol) {
  if (c.regime != Regime::OppositeMax) {
    throw SolverError(ErrorKind::DomainError, "volume: regime must be OppositeMax");
  }
  MaxGeometry geo = max_geometry(u_m, c, p, quad_tol);
  VolumeBreakdown vb;
  strip_volumes(u_m, c, p, quad_tol, &vb.v1, &vb.v2);
  const bool left_vertical = (p.theta1 == internal::kPi / 2.0);
  const bool right_vertical = (p.theta2 == internal::kPi / 2.0);
  vb.v3 = left_vertical ? 0.0 : 0.5 * geo.x1 * geo.x1 * std::tan(p.theta1);
  vb.v4 = right_vertical ? 0.0 : 0.5 * geo.x2 * geo.x2 * std::tan(p.theta2);
  vb.v5 = geo.x_m * (geo.cd.u1 - geo.cd.u2);
  vb.total = vb.v1 + vb.v2 + vb.v3 + vb.v4 + vb.v5;
  return vb;
}

VolumeBreakdown volume_min(double u_m, const ContactConfig& c, const FluidParams& p,
                           double quad_tol) {
  if (!(u_m > 0.0)) {
    throw SolverError(ErrorKind::DomainError, "minimum branch requires u_m > 0");
  }
  const double u1 = radical(u_m, c.psi1, p);
  const double u2 = radical(u_m, c.psi2, p);
  const double r1 = -r_integral(u_m, 0.0, c.psi1, p, quad_tol);  // psi1 < 0
  const double r2 = r_integral(u_m, 0.0, c.psi2, p, quad_tol);   // psi2 > 0
  const double x_m = internal::apex_abscissa(r1, r2, u1, u2, p.theta1, p.theta2);
  const double x1 = x_m - r1;
  const double x2 = x_m + r2;
  const double y0 = internal::vertex_height(x1, u1, x2, u2, p.theta1, p.theta2);
  const double ct1 = internal::cot(p.theta1);
  const double ct2 = internal::cot(p.theta2);
  const double sg = p.sigma / p.g;

  // Left lobe between the rising curve piece, the left wall, and y = u_m;
  // closed form from integral x dy = [x y] - integral y dx along the arc.
  const double int_xc_left = x1 * u1 - x_m * u_m - sg * std::sin(c.psi1);
  const double wall_left = 0.5 * ((y0 - u_m) * ct1 + x1) * (u1 - u_m);
  // Right lobe, same construction against the right wall.
  const double int_xc_right = x2 * u2 - x_m * u_m - sg * std::sin(c.psi2);
  const double wall_right = 0.5 * ((u_m - y0) * ct2 + x2) * (u2 - u_m);

  VolumeBreakdown vb;
  vb.v1 = int_xc_left - wall_left;
  vb.v2 = wall_right - int_xc_right;
  vb.v3 = 0.0;
  vb.v4 = 0.5 * (u_m - y0) * (u_m - y0) * (ct1 + ct2);
  vb.v5 = 0.0;
  vb.total = vb.v1 + vb.v2 + vb.v4;
  return vb;
}

namespace {

std::vector<SegmentSpec> max_segments(double u_m, const MaxGeometry& geo,
                                      const ContactConfig& c, const FluidParams& p) {
  SegmentSpec seg;
  seg.psi_start = c.psi1;
  seg.psi_end = c.psi2;
  seg.x_start = geo.x1;
  seg.height = [u_m, p](double psi) { return -radical(u_m, psi, p); };
  seg.x_increment = [u_m, p](double a, double b) {
    // dx/dpsi = sigma cos(psi)/(g y), y < 0
    return -r_integral(u_m, a, b, p, 1e-12);
  };
  return {seg};
}

std::vector<SegmentSpec> min_segments(double u_m, double x1, const ContactConfig& c,
                                      const FluidParams& p) {
  SegmentSpec seg;
  seg.psi_start = c.psi1;
  seg.psi_end = c.psi2;
  seg.x_start = x1;
  seg.height = [u_m, p](double psi) { return radical(u_m, psi, p); };
  seg.x_increment = [u_m, p](double a, double b) {
    return r_integral(u_m, a, b, p, 1e-12);
  };
  return {seg};
}

SteadyState finish_state(SteadyState st, const SolveOptions& opts) {
  st.shifted = reconstruct(st.segment_specs, opts.curve_samples);
  st.curve = to_physical(st.shifted, st.P0, st.params.g);
  const double shift = st.P0 / st.params.g;
  st.residuals = compute_residuals(st);
  if (st.breakdown) {
    // densely sampled shoelace is the arbiter for the decomposition
    ShiftedCurve dense = reconstruct(st.segment_specs, 4097);
    const double area = enclosed_area_physical(to_physical(dense, st.P0, st.params.g));
    const double rel =
        std::fabs(area - st.breakdown->total) / std::max(std::fabs(area), 1e-12);
    if (rel > 1e-5) {
      std::ostringstream os;
      os << "volume decomposition disagrees with shoelace area: total="
         << st.breakdown->total << " shoelace=" << area << " rel=" << rel;
      st.diagnostics.push_back(os.str());
      st.volume_total = area;
    }
  }
  (void)shift;
  return st;
}

}  // namespace

SteadyState assemble_max_state(double u_m, const ContactConfig& c, const FluidParams& p,
                               const SolveOptions& opts) {
  MaxGeometry geo = max_geometry(u_m, c, p, opts.quad_tol);
  SteadyState st;
  st.params = p;
  st.config = c;
  st.branch = Branch::OppositeMax;
  st.param_kind = ShootParamKind::ApexHeight;
  st.shoot_param = u_m;
  st.P0 = geo.P0;
  const double shift = geo.P0 / p.g;
  st.contact_left = {geo.x1, geo.cd.u1 + shift};
  st.contact_right = {geo.x2, geo.cd.u2 + shift};
  st.breakdown = volume(u_m, c, p, opts.quad_tol);
  st.volume_total = st.breakdown->total;
  st.segment_specs = max_segments(u_m, geo, c, p);
  return finish_state(std::move(st), opts);
}

SteadyState assemble_min_state(double u_m, const ContactConfig& c, const FluidParams& p,
                               const SolveOptions& opts) {
  VolumeBreakdown vb = volume_min(u_m, c, p, opts.quad_tol);
  const double u1 = radical(u_m, c.psi1, p);
  const double u2 = radical(u_m, c.psi2, p);
  const double r1 = -r_integral(u_m, 0.0, c.psi1, p, opts.quad_tol);
  const double r2 = r_integral(u_m, 0.0, c.psi2, p, opts.quad_tol);
  const double x_m = internal::apex_abscissa(r1, r2, u1, u2, p.theta1, p.theta2);
  const double x1 = x_m - r1;
  const double x2 = x_m + r2;
  const double y0 = internal::vertex_height(x1, u1, x2, u2, p.theta1, p.theta2);

  SteadyState st;
  st.params = p;
  st.config = c;
  st.branch = Branch::OppositeMin;
  st.param_kind = ShootParamKind::ApexHeight;
  st.shoot_param = u_m;
  st.P0 = -p.g * y0;
  const double shift = st.P0 / p.g;
  st.contact_left = {x1, u1 + shift};
  st.contact_right = {x2, u2 + shift};
  st.breakdown = vb;
  st.volume_total = vb.total;
  st.reduced_confidence = true;
  st.segment_specs = min_segments(u_m, x1, c, p);
  return finish_state(std::move(st), opts);
}

ShootOutcome shoot(const FluidParams& p, const ContactConfig& c, const SolveOptions& opts_in) {
  const SolveOptions opts = with_tol(opts_in);
  if (c.regime != Regime::OppositeMax) {
    throw SolverError(ErrorKind::DomainError, "shoot: regime must be OppositeMax");
  }
  const double V = p.volume;
  if (!(V > 0.0)) {
    throw SolverError(ErrorKind::DomainError, "shoot requires a positive target volume");
  }
  auto f = [&](double u) { return volume(u, c, p, opts.quad_tol).total - V; };

  // upper end of the bracket: push toward 0- until V(u_hi) > V
  double u_hi = -opts.bracket_seed;
  double f_hi = f(u_hi);
  while (f_hi < 0.0 && u_hi < -1e-8) {
    u_hi *= 0.1;
    if (u_hi > -1e-8) u_hi = -1e-8;
    f_hi = f(u_hi);
  }
  if (f_hi < 0.0) {
    std::ostringstream os;
    os << "could not bracket: V(" << u_hi << ") = " << f_hi + V << " < target " << V;
    throw SolverError(ErrorKind::BracketFailure, os.str());
  }
  // lower end: geometric expansion downward until V(u_lo) < V
  double u_lo = std::min(2.0 * u_hi, -1.0);
  double f_lo = f(u_lo);
  while (f_lo > 0.0) {
    u_lo *= 2.0;
    if (u_lo < -1e12) {
      throw SolverError(ErrorKind::BracketFailure,
                        "volume stays above the target even for u_m = -1e12");
    }
    f_lo = f(u_lo);
  }

  const double f_tol = std::max(opts.volume_tol_abs, opts.volume_tol_rel * V);
  ShootOutcome out;
  if (p.gamma_jump < 0.0) {
    auto res = internal::bisect(f, u_lo, u_hi, f_lo, f_hi, opts.param_tol, f_tol,
                                opts.max_bisections);
    out.states.push_back(assemble_max_state(res.root, c, p, opts));
    out.principal = 0;
  } else {
    // monotonicity unproven here: locate every root in the bracket
    auto roots = internal::scan_roots(f, u_lo, u_hi, opts.prescan_samples, opts.param_tol,
                                      f_tol, opts.max_bisections);
    if (roots.empty()) {
      throw SolverError(ErrorKind::BracketFailure, "pre-scan found no volume root");
    }
    for (double r : roots) out.states.push_back(assemble_max_state(r, c, p, opts));
    out.principal = 0;
    if (roots.size() > 1) {
      std::ostringstream os;
      os << roots.size() << " volume roots found; first (most negative u_m) is principal";
      out.diagnostics.push_back(os.str());
    }
  }
  return out;
}

SteadyState solve_opposite_min(const FluidParams& p, const ContactConfig& c,
                               const SolveOptions& opts) {
  if (c.regime != Regime::OppositeMin) {
    throw SolverError(ErrorKind::DomainError, "solve_opposite_min: regime must be OppositeMin");
  }
  const double V = p.volume;
  if (!(V > 0.0)) {
    throw SolverError(ErrorKind::DomainError, "solve requires a positive target volume");
  }
  auto f = [&](double u) { return volume_min(u, c, p, opts.quad_tol).total - V; };

  double u_lo = opts.bracket_seed;  // small apex height -> large volume
  double f_lo = f(u_lo);
  while (f_lo < 0.0 && u_lo > 1e-8) {
    u_lo *= 0.1;
    if (u_lo < 1e-8) u_lo = 1e-8;
    f_lo = f(u_lo);
  }
  if (f_lo < 0.0) {
    throw SolverError(ErrorKind::BracketFailure,
                      "could not bracket the minimum-branch volume from above");
  }
  double u_hi = std::max(2.0 * u_lo, 1.0);
  double f_hi = f(u_hi);
  while (f_hi > 0.0) {
    u_hi *= 2.0;
    if (u_hi > 1e12) {
      throw SolverError(ErrorKind::BracketFailure,
                        "minimum-branch volume stays above the target for u_m = 1e12");
    }
    f_hi = f(u_hi);
  }

  const double f_tol = std::max(opts.volume_tol_abs, opts.volume_tol_rel * V);
  // uniqueness is unknown on this branch; scan for every root and keep the first
  auto roots = internal::scan_roots(f, u_lo, u_hi, opts.prescan_samples, opts.param_tol,
                                    f_tol, opts.max_bisections);
  if (roots.empty()) {
    throw SolverError(ErrorKind::BracketFailure, "pre-scan found no volume root");
  }
  SteadyState st = assemble_min_state(roots.front(), c, p, opts);
  if (roots.size() > 1) {
    std::ostringstream os;
    os << roots.size() << " minimum-branch roots found; smallest u_m kept";
    st.diagnostics.push_back(os.str());
  }
  if (!residuals_pass(st.residuals)) {
    std::ostringstream os;
    os << "minimum-branch state failed residual validation: ode=" << st.residuals.ode_residual
       << " bc=" << st.residuals.bc_residual << " area=" << st.residuals.area_residual
       << " polar_monotone=" << st.residuals.polar_monotone;
    throw SolverError(ErrorKind::ValidationFailure, os.str());
  }
  return st;
}

}  // namespace capwedge::case_opposite
