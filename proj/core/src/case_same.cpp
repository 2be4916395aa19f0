#include "capwedge/case_same.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "capwedge/error.hpp"
#include "capwedge/quadrature.hpp"
#include "capwedge/trig.hpp"
#include "internal_geometry.hpp"

namespace capwedge::case_same {

namespace q = capwedge::quadrature;
using internal::IncrementalIntegral;

namespace {

double coef(const FluidParams& p) { return 2.0 * p.sigma / p.g; }

double clamped_sqrt(double v) {
  if (v < 0.0 && v > -1e-14) v = 0.0;
  if (v < 0.0) {
    throw SolverError(ErrorKind::DomainError, "negative radicand in contact height");
  }
  return std::sqrt(v);
}

void require_canonical(const ContactConfig& c) {
  if (!(c.psi1 <= 0.0 && c.psi2 <= 0.0)) {
    throw SolverError(ErrorKind::DomainError,
                      "same-sign operations expect the canonical pattern psi1, psi2 <= 0 "
                      "(both-positive configs are handled by the mirrored solver)");
  }
  if (c.psi1 == 0.0 && c.psi2 == 0.0) {
    throw SolverError(ErrorKind::UnsupportedGeometry,
                      "flat configuration (psi1 = psi2 = 0) has no branch parametrization");
  }
}

double seam_angle(const ContactConfig& c) { return std::max(c.psi1, c.psi2); }

// sigma/g * integral of cos/sqrt((2s/g)(cos psi_m - cos phi)) from `from` to the apex.
double apex_half_width(double psi_m, double from, const FluidParams& p, double tol) {
  if (from == psi_m) return 0.0;
  q::IntegralSpec spec;
  spec.kernel = q::Kernel::Cos;
  spec.denominator = q::DenominatorKind::ApexRadical;
  spec.param = psi_m;
  spec.sigma = p.sigma;
  spec.g = p.g;
  spec.a = from;
  spec.b = psi_m;
  spec.tol = tol;
  return (p.sigma / p.g) * q::integrate_apex_singular(spec);
}

// sigma/g * integral_a^b cos/sqrt(t^2 + (2s/g)(cos anchor - cos phi)). The
// radical degenerates toward phi = anchor as t -> 0; any interval touching the
// anchor goes through the substituted route, which stays accurate uniformly
// in the offset.
double offset_width_integral(double t, double anchor, double a, double b,
                             const FluidParams& p, double tol) {
  if (a == b) return 0.0;
  q::IntegralSpec spec;
  spec.kernel = q::Kernel::Cos;
  spec.denominator = q::DenominatorKind::ApexRadical;
  spec.param = anchor;
  spec.offset = t;
  spec.sigma = p.sigma;
  spec.g = p.g;
  spec.a = a;
  spec.b = b;
  spec.tol = tol;
  if (a == anchor || b == anchor) {
    return (p.sigma / p.g) * q::integrate_apex_singular(spec);
  }
  return (p.sigma / p.g) * q::integrate_regular(spec);
}

// Green's-theorem area of the region bounded by the curve between the
// contacts and the two wall segments through the vertex:
//   V = (sigma/g)(sin psi2 - sin psi1) + x1 u1/2 - x2 u2/2 - y0 (x2 - x1)/2.
double green_volume(const ContactConfig& c, const FluidParams& p, double x1, double u1,
                    double x2, double u2, double y0) {
  const double sg = p.sigma / p.g;
  return sg * (std::sin(c.psi2) - std::sin(c.psi1)) + 0.5 * x1 * u1 - 0.5 * x2 * u2 -
         0.5 * y0 * (x2 - x1);
}

struct InteriorGeometry {
  InteriorContacts ic;
  double x_m, x1, x2, y0, P0;
};

InteriorGeometry interior_geometry(double psi_m, const ContactConfig& c,
                                   const FluidParams& p, double tol) {
  InteriorGeometry g;
  g.ic = interior_contacts(psi_m, c, p, tol);
  g.x_m = internal::apex_abscissa(g.ic.r1, g.ic.r2, g.ic.u1, g.ic.u2, p.theta1, p.theta2);
  g.x1 = g.x_m - g.ic.r1;
  g.x2 = g.x_m + g.ic.r2;
  g.y0 = internal::vertex_height(g.x1, g.ic.u1, g.x2, g.ic.u2, p.theta1, p.theta2);
  g.P0 = -p.g * g.y0;
  return g;
}

ContactConfig mirrored_config(const ContactConfig& c) {
  ContactConfig m = c;
  m.psi1 = -c.psi2;
  m.psi2 = -c.psi1;
  m.psi1_is_larger = (m.psi1 >= m.psi2);
  return m;
}

FluidParams mirrored_params(const FluidParams& p) {
  FluidParams m = p;
  std::swap(m.theta1, m.theta2);
  return m;
}

bool needs_mirror(const ContactConfig& c) {
  return c.psi1 >= 0.0 && c.psi2 >= 0.0 && !(c.psi1 == 0.0 && c.psi2 == 0.0);
}

SteadyState mirror_state(SteadyState st, const ContactConfig& original_c,
                         const FluidParams& original_p) {
  SteadyState out;
  out.params = original_p;
  out.config = original_c;
  out.branch = st.branch;
  out.param_kind = st.param_kind;
  out.shoot_param =
      (st.param_kind == ShootParamKind::ApexAngle) ? -st.shoot_param : st.shoot_param;
  out.P0 = st.P0;
  out.contact_left = {-st.contact_right[0], st.contact_right[1]};
  out.contact_right = {-st.contact_left[0], st.contact_left[1]};
  out.volume_total = st.volume_total;
  out.reduced_confidence = st.reduced_confidence;
  out.diagnostics = st.diagnostics;

  for (auto it = st.shifted.segments.rbegin(); it != st.shifted.segments.rend(); ++it) {
    std::vector<SamplePoint> seg(it->rbegin(), it->rend());
    for (auto& pt : seg) {
      pt.x = -pt.x;
      pt.psi = -pt.psi;
    }
    out.shifted.segments.push_back(std::move(seg));
  }
  out.curve.assign(st.curve.rbegin(), st.curve.rend());
  for (auto& pt : out.curve) pt[0] = -pt[0];

  std::vector<SegmentSpec> specs;
  for (auto it = st.segment_specs.rbegin(); it != st.segment_specs.rend(); ++it) {
    const SegmentSpec old = *it;
    SegmentSpec s;
    s.psi_start = -old.psi_end;
    s.psi_end = -old.psi_start;
    const double x_end_old = old.x_start + old.x_increment(old.psi_start, old.psi_end);
    s.x_start = -x_end_old;
    s.height = [old](double psi) { return old.height(-psi); };
    s.x_increment = [old](double a, double b) { return -old.x_increment(-a, -b); };
    specs.push_back(std::move(s));
  }
  out.segment_specs = std::move(specs);
  out.residuals = compute_residuals(out);
  return out;
}

}  // namespace

InteriorContacts interior_contacts(double psi_m, const ContactConfig& c,
                                   const FluidParams& p, double tol) {
  require_canonical(c);
  const double hi = seam_angle(c);
  if (psi_m < hi || psi_m > 0.0) {
    throw SolverError(ErrorKind::DomainError,
                      "psi_m must lie in [max(psi1,psi2), 0) for the interior branch");
  }
  InteriorContacts ic;
  const double k = coef(p);
  ic.u1 = clamped_sqrt(k * cos_diff(psi_m, c.psi1));
  ic.u2 = -clamped_sqrt(k * cos_diff(psi_m, c.psi2));
  ic.r1 = apex_half_width(psi_m, c.psi1, p, tol);
  ic.r2 = apex_half_width(psi_m, c.psi2, p, tol);
  return ic;
}

double interior_apex_x(const InteriorContacts& ic, const FluidParams& p) {
  return internal::apex_abscissa(ic.r1, ic.r2, ic.u1, ic.u2, p.theta1, p.theta2);
}

InteriorResult interior_volume(double psi_m, const ContactConfig& c, const FluidParams& p,
                               double tol) {
  require_canonical(c);
  if (psi_m >= 0.0) {
    throw SolverError(ErrorKind::DivergentIntegral,
                      "interior volume diverges as psi_m -> 0; psi_m >= 0 is not admissible");
  }
  InteriorGeometry g = interior_geometry(psi_m, c, p, tol);
  InteriorResult out;
  out.contacts = g.ic;
  out.x_m = g.x_m;
  out.x1 = g.x1;
  out.x2 = g.x2;
  out.P0 = g.P0;
  out.volume = green_volume(c, p, g.x1, g.ic.u1, g.x2, g.ic.u2, g.y0);
  return out;
}

BoundaryResult boundary_geometry(double t, const ContactConfig& c, const FluidParams& p,
                                 double tol) {
  require_canonical(c);
  if (!(t >= 0.0)) {
    throw SolverError(ErrorKind::DomainError, "boundary branch parameter must be >= 0");
  }
  BoundaryResult br;
  br.increasing_psi = (c.psi2 > c.psi1);
  const double anchor = br.increasing_psi ? c.psi2 : c.psi1;
  const double other = br.increasing_psi ? c.psi1 : c.psi2;
  const double k = coef(p);
  const double far_h = std::sqrt(t * t + k * cos_diff(anchor, other));
  if (br.increasing_psi) {
    br.u2 = t;
    br.u1 = far_h;
  } else {
    br.u1 = -t;
    br.u2 = -far_h;
  }
  const double lo = std::min(c.psi1, c.psi2);
  const double hi = std::max(c.psi1, c.psi2);
  const double r2 = offset_width_integral(t, anchor, lo, hi, p, tol);
  br.x1 = internal::left_contact_abscissa(r2, br.u1, br.u2, p.theta1, p.theta2);
  br.x2 = br.x1 + r2;
  const double y0 =
      internal::vertex_height(br.x1, br.u1, br.x2, br.u2, p.theta1, p.theta2);
  br.P0 = -p.g * y0;
  return br;
}

double boundary_volume_at(double t, const ContactConfig& c, const FluidParams& p,
                          double tol) {
  BoundaryResult br = boundary_geometry(t, c, p, tol);
  if (c.psi1 == c.psi2) return 0.0;  // the branch degenerates to the vertex

  const double anchor = br.increasing_psi ? c.psi2 : c.psi1;
  // Signed horizontal offset from the left contact, anchored at psi1; the
  // increment integrator handles the t = 0 seam singularity at the anchor.
  IncrementalIntegral offset_from_left(
      [&](double a, double b) { return offset_width_integral(t, anchor, a, b, p, 1e-13); },
      c.psi1);
  const double dir = br.increasing_psi ? 1.0 : -1.0;

  const double lo = std::min(c.psi1, c.psi2);
  const double hi = std::max(c.psi1, c.psi2);
  // nested strip integral: (x - x1)(-sin psi)/w; w degenerates at the upper
  // (anchor) endpoint as t -> 0, so integrate it through the apex transform
  auto strip_numerator = [&](double psi) {
    return dir * offset_from_left(psi) * (p.sigma / p.g) * (-std::sin(psi));
  };
  const double nested =
      q::integrate_apex_weighted(strip_numerator, hi, t, p.sigma, p.g, lo, tol);

  const double ct1 = internal::cot(p.theta1);
  const double ct2 = internal::cot(p.theta2);
  const double du = br.u1 - br.u2;
  const double y0 = -br.P0 / p.g;
  const double v1 = nested - 0.5 * du * du * ct1;
  const double v2 = 0.5 * (br.u2 - y0) * (br.u2 - y0) * (ct1 + ct2);
  return v1 + v2;
}

BoundaryResult boundary_contacts(double u1, const ContactConfig& c, const FluidParams& p,
                                 double tol) {
  require_canonical(c);
  if (c.psi2 > c.psi1) {
    throw SolverError(ErrorKind::DomainError,
                      "boundary_contacts expects the decreasing orientation psi1 >= psi2; "
                      "the increasing one is parametrized by the right contact height");
  }
  if (u1 > 0.0) {
    throw SolverError(ErrorKind::DomainError, "boundary branch requires u1 <= 0");
  }
  return boundary_geometry(-u1, c, p, tol);
}

double boundary_volume(double u1, const ContactConfig& c, const FluidParams& p, double tol) {
  require_canonical(c);
  if (c.psi2 > c.psi1) {
    throw SolverError(ErrorKind::DomainError,
                      "boundary_volume expects the decreasing orientation psi1 >= psi2");
  }
  if (u1 > 0.0) {
    throw SolverError(ErrorKind::DomainError, "boundary branch requires u1 <= 0");
  }
  return boundary_volume_at(-u1, c, p, tol);
}

namespace {

std::vector<SegmentSpec> interior_segments(double psi_m, const InteriorGeometry& g,
                                           const ContactConfig& c, const FluidParams& p) {
  const double k = coef(p);
  auto w = [k, psi_m](double psi) {
    double arg = k * cos_diff(psi_m, psi);
    if (arg < 0.0) arg = 0.0;
    return std::sqrt(arg);
  };
  auto increment = [psi_m, p](double a, double b, double sign) {
    if (a == b) return 0.0;
    q::IntegralSpec spec;
    spec.kernel = q::Kernel::Cos;
    spec.denominator = q::DenominatorKind::ApexRadical;
    spec.param = psi_m;
    spec.sigma = p.sigma;
    spec.g = p.g;
    spec.a = a;
    spec.b = b;
    spec.tol = 1e-12;
    const double val = (a == psi_m || b == psi_m) ? q::integrate_apex_singular(spec)
                                                  : q::integrate_regular(spec);
    return sign * (p.sigma / p.g) * val;
  };

  // A sliver narrower than this contributes nothing measurable to the curve
  // or the area, and finite-difference stencils on it underflow; drop it.
  constexpr double kMinRange = 1e-10;
  std::vector<SegmentSpec> specs;
  if (psi_m - c.psi1 > kMinRange) {
    SegmentSpec a;
    a.psi_start = c.psi1;
    a.psi_end = psi_m;
    a.x_start = g.x1;
    a.height = w;
    a.x_increment = [increment](double s, double e) { return increment(s, e, 1.0); };
    specs.push_back(std::move(a));
  }
  if (psi_m - c.psi2 > kMinRange) {
    SegmentSpec b;
    b.psi_start = psi_m;
    b.psi_end = c.psi2;
    b.x_start = g.x_m;
    b.height = [w](double psi) { return -w(psi); };
    b.x_increment = [increment](double s, double e) { return increment(s, e, -1.0); };
    specs.push_back(std::move(b));
  }
  if (specs.empty()) {
    throw SolverError(ErrorKind::DomainError,
                      "interior state degenerate: both curve segments collapsed");
  }
  return specs;
}

std::vector<SegmentSpec> boundary_segments(double t, const BoundaryResult& br,
                                           const ContactConfig& c, const FluidParams& p) {
  const double anchor = br.increasing_psi ? c.psi2 : c.psi1;
  const double k = coef(p);
  const double ysign = br.increasing_psi ? 1.0 : -1.0;
  auto w = [k, t, anchor](double psi) {
    double arg = t * t + k * cos_diff(anchor, psi);
    if (arg < 0.0) arg = 0.0;
    return std::sqrt(arg);
  };
  SegmentSpec s;
  s.psi_start = c.psi1;
  s.psi_end = c.psi2;
  s.x_start = br.x1;
  s.height = [w, ysign](double psi) { return ysign * w(psi); };
  s.x_increment = [t, anchor, p, ysign](double a, double b) {
    return ysign * offset_width_integral(t, anchor, a, b, p, 1e-12);
  };
  return {s};
}

SteadyState finish(SteadyState st, const SolveOptions& opts) {
  st.shifted = reconstruct(st.segment_specs, opts.curve_samples);
  st.curve = to_physical(st.shifted, st.P0, st.params.g);
  st.residuals = compute_residuals(st);
  return st;
}

struct BranchScan {
  std::vector<double> xs;
  std::vector<double> vals;
};

BranchScan scan_interior(const ContactConfig& c, const FluidParams& p,
                         const SolveOptions& opts) {
  BranchScan sc;
  const double hi = seam_angle(c);
  const int n = opts.threshold_scan;
  for (int kk = 0; kk < n; ++kk) {
    const double pm = hi + (0.0 - hi) * static_cast<double>(kk) / n;
    const double v = interior_volume(pm, c, p, opts.quad_tol).volume;
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "interior volume non-finite at psi_m = " << pm;
      throw SolverError(ErrorKind::ScanFailure, os.str());
    }
    sc.xs.push_back(pm);
    sc.vals.push_back(v);
  }
  return sc;
}

BranchScan scan_boundary(const ContactConfig& c, const FluidParams& p, double u_max,
                         const SolveOptions& opts) {
  BranchScan sc;
  const int n = opts.threshold_scan;
  for (int kk = 0; kk <= n; ++kk) {
    const double t = u_max * static_cast<double>(kk) / n;
    const double v = boundary_volume_at(t, c, p, opts.quad_tol);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "boundary volume non-finite at t = " << t;
      throw SolverError(ErrorKind::ScanFailure, os.str());
    }
    sc.xs.push_back(t);
    sc.vals.push_back(v);
  }
  return sc;
}

struct ThresholdScan {
  BranchThresholds th;
  BranchScan interior;
  BranchScan boundary;
  double u_max = 0.0;
};

ThresholdScan thresholds_canonical(const ContactConfig& c, const FluidParams& p,
                                   const SolveOptions& opts) {
  ThresholdScan out;
  if (seam_angle(c) == 0.0) {
    // One contact slope is exactly zero: the interior interval is empty and
    // the boundary volume is unbounded as its parameter approaches the seam.
    out.th.v_m = std::numeric_limits<double>::infinity();
    out.th.v_1 = std::numeric_limits<double>::infinity();
    out.th.overlap = false;
    return out;
  }
  out.interior = scan_interior(c, p, opts);

  auto vi = [&](double pm) { return interior_volume(pm, c, p, opts.quad_tol).volume; };
  std::size_t k_min = 0;
  for (std::size_t i = 1; i < out.interior.vals.size(); ++i) {
    if (out.interior.vals[i] < out.interior.vals[k_min]) k_min = i;
  }
  double v_m = out.interior.vals[k_min];
  {
    const double lo = out.interior.xs[k_min > 0 ? k_min - 1 : 0];
    const double hi_x = (k_min + 1 < out.interior.xs.size()) ? out.interior.xs[k_min + 1]
                                                             : out.interior.xs[k_min];
    if (hi_x > lo) {
      const double refined = internal::golden_min(vi, lo, hi_x, opts.golden_tol);
      v_m = std::min(v_m, vi(refined));
    }
  }

  double u_max = 1.0;
  for (int i = 0; i < 60; ++i) {
    const double v = boundary_volume_at(u_max, c, p, opts.quad_tol);
    if (v < v_m / 10.0 + 1e-12) break;
    u_max *= 2.0;
  }
  out.u_max = u_max;
  out.boundary = scan_boundary(c, p, u_max, opts);
  // t = 0 is the interior seam curve; share the interior number for that
  // point so the threshold comparison is free of cross-route quadrature noise
  out.boundary.vals[0] = out.interior.vals[0];

  auto vb = [&](double t) { return boundary_volume_at(t, c, p, opts.quad_tol); };
  std::size_t k_max = 0;
  for (std::size_t i = 1; i < out.boundary.vals.size(); ++i) {
    if (out.boundary.vals[i] > out.boundary.vals[k_max]) k_max = i;
  }
  double v_1 = out.boundary.vals[k_max];
  {
    const double lo = out.boundary.xs[k_max > 0 ? k_max - 1 : 0];
    const double hi_x = (k_max + 1 < out.boundary.xs.size()) ? out.boundary.xs[k_max + 1]
                                                             : out.boundary.xs[k_max];
    if (hi_x > lo) {
      auto neg = [&](double t) { return -vb(t); };
      const double refined = internal::golden_min(neg, lo, hi_x, opts.golden_tol);
      v_1 = std::max(v_1, vb(refined));
    }
  }

  if (!(v_1 >= v_m - 1e-9 * std::max(1.0, v_m))) {
    std::ostringstream os;
    os << "branch thresholds violate v_1 >= v_m: v_1 = " << v_1 << ", v_m = " << v_m;
    throw SolverError(ErrorKind::ScanFailure, os.str());
  }
  out.th.v_m = v_m;
  out.th.v_1 = v_1;
  out.th.overlap = (v_1 - v_m) > 1e-9 * std::max(1.0, v_m);
  return out;
}

void collect_bracket_roots(const BranchScan& sc, double target,
                           const std::function<double(double)>& f, double x_tol, double f_tol,
                           int max_iter, std::vector<double>* roots) {
  for (std::size_t i = 0; i + 1 < sc.xs.size(); ++i) {
    const double f0 = sc.vals[i] - target;
    const double f1 = sc.vals[i + 1] - target;
    if (f0 == 0.0) {
      roots->push_back(sc.xs[i]);
    } else if (f1 != 0.0 && (f0 > 0.0) != (f1 > 0.0)) {
      roots->push_back(
          internal::bisect(f, sc.xs[i], sc.xs[i + 1], f0, f1, x_tol, f_tol, max_iter).root);
    }
  }
  if (!sc.vals.empty() && sc.vals.back() == target) roots->push_back(sc.xs.back());
}

SteadyState flat_state(const FluidParams& p, const SolveOptions& opts) {
  // psi1 = psi2 = 0: the free surface is horizontal at shifted height zero and
  // the volume fixes P0 directly from the wedge triangle.
  const double ct = internal::cot(p.theta1) + internal::cot(p.theta2);
  const double h = std::sqrt(2.0 * p.volume / ct);
  SteadyState st;
  st.params = p;
  st.config = derive_contact_config(p);
  st.branch = Branch::SameBoundary;
  st.param_kind = ShootParamKind::ContactHeight;
  st.shoot_param = 0.0;
  st.P0 = p.g * h;
  const double x1 = -h * internal::cot(p.theta1);
  const double x2 = h * internal::cot(p.theta2);
  st.contact_left = {x1, h};
  st.contact_right = {x2, h};
  st.volume_total = p.volume;
  const double width = x2 - x1;
  // sample the flat segment directly
  std::vector<SamplePoint> seg;
  for (int i = 0; i < opts.curve_samples; ++i) {
    const double x = x1 + width * static_cast<double>(i) / (opts.curve_samples - 1);
    seg.push_back({0.0, x, 0.0});
  }
  st.shifted.segments.push_back(std::move(seg));
  st.curve = to_physical(st.shifted, st.P0, p.g);
  st.residuals = compute_residuals(st);
  st.segment_specs.clear();  // closed forms degenerate; sample path is exact here
  return st;
}

}  // namespace

SteadyState assemble_interior_state(double psi_m, const ContactConfig& c,
                                    const FluidParams& p, const SolveOptions& opts) {
  InteriorGeometry g = interior_geometry(psi_m, c, p, opts.quad_tol);
  SteadyState st;
  st.params = p;
  st.config = c;
  st.branch = Branch::SameInterior;
  st.param_kind = ShootParamKind::ApexAngle;
  st.shoot_param = psi_m;
  st.P0 = g.P0;
  const double shift = g.P0 / p.g;
  st.contact_left = {g.x1, g.ic.u1 + shift};
  st.contact_right = {g.x2, g.ic.u2 + shift};
  st.volume_total = green_volume(c, p, g.x1, g.ic.u1, g.x2, g.ic.u2, g.y0);
  st.segment_specs = interior_segments(psi_m, g, c, p);
  return finish(std::move(st), opts);
}

SteadyState assemble_boundary_state(double t, const ContactConfig& c, const FluidParams& p,
                                    const SolveOptions& opts) {
  BoundaryResult br = boundary_geometry(t, c, p, opts.quad_tol);
  SteadyState st;
  st.params = p;
  st.config = c;
  st.branch = Branch::SameBoundary;
  st.param_kind = ShootParamKind::ContactHeight;
  st.shoot_param = br.increasing_psi ? br.u2 : br.u1;
  st.P0 = br.P0;
  const double shift = br.P0 / p.g;
  st.contact_left = {br.x1, br.u1 + shift};
  st.contact_right = {br.x2, br.u2 + shift};
  st.volume_total = boundary_volume_at(t, c, p, opts.quad_tol);
  st.segment_specs = boundary_segments(t, br, c, p);
  return finish(std::move(st), opts);
}

BranchThresholds thresholds(const ContactConfig& c, const FluidParams& p,
                            const SolveOptions& opts) {
  if (c.regime != Regime::SameSign) {
    throw SolverError(ErrorKind::DomainError, "thresholds: regime must be SameSign");
  }
  if (needs_mirror(c)) {
    return thresholds_canonical(mirrored_config(c), mirrored_params(p), opts).th;
  }
  require_canonical(c);
  return thresholds_canonical(c, p, opts).th;
}

SteadyState rebuild_interior(double psi_m_reported, const ContactConfig& c,
                             const FluidParams& p, const SolveOptions& opts) {
  if (needs_mirror(c)) {
    SteadyState st = assemble_interior_state(-psi_m_reported, mirrored_config(c),
                                             mirrored_params(p), opts);
    return mirror_state(std::move(st), c, p);
  }
  return assemble_interior_state(psi_m_reported, c, p, opts);
}

SteadyState rebuild_boundary(double contact_height_reported, const ContactConfig& c,
                             const FluidParams& p, const SolveOptions& opts) {
  if (c.psi1 == 0.0 && c.psi2 == 0.0) {
    return flat_state(p, opts);
  }
  if (needs_mirror(c)) {
    const ContactConfig cc = mirrored_config(c);
    const double t = (cc.psi2 > cc.psi1) ? contact_height_reported : -contact_height_reported;
    SteadyState st = assemble_boundary_state(t, cc, mirrored_params(p), opts);
    return mirror_state(std::move(st), c, p);
  }
  const double t = (c.psi2 > c.psi1) ? contact_height_reported : -contact_height_reported;
  return assemble_boundary_state(t, c, p, opts);
}

ShootOutcome shoot(const FluidParams& p, const ContactConfig& c, const SolveOptions& opts) {
  if (c.regime != Regime::SameSign) {
    throw SolverError(ErrorKind::DomainError, "shoot: regime must be SameSign");
  }
  const double V = p.volume;
  if (!(V > 0.0)) {
    throw SolverError(ErrorKind::DomainError, "shoot requires a positive target volume");
  }

  if (c.psi1 == 0.0 && c.psi2 == 0.0) {
    ShootOutcome out;
    out.states.push_back(flat_state(p, opts));
    out.principal = 0;
    return out;
  }

  const bool mirrored = needs_mirror(c);
  const ContactConfig cc = mirrored ? mirrored_config(c) : c;
  const FluidParams pp = mirrored ? mirrored_params(p) : p;
  const double f_tol = std::max(opts.volume_tol_abs, opts.volume_tol_rel * V);

  if (seam_angle(cc) == 0.0) {
    // Empty interior interval; the boundary family alone covers every volume,
    // diverging at the seam. Bracket it like the opposite-sign shoot.
    auto fb = [&](double t) { return boundary_volume_at(t, cc, pp, opts.quad_tol) - V; };
    double t_lo = opts.bracket_seed;
    double f_lo = fb(t_lo);
    while (f_lo < 0.0 && t_lo > 1e-8) {
      t_lo = std::max(t_lo * 0.1, 1e-8);
      f_lo = fb(t_lo);
    }
    if (f_lo < 0.0) {
      throw SolverError(ErrorKind::BracketFailure,
                        "boundary volume below target even at the seam approach");
    }
    double t_hi = std::max(2.0 * t_lo, 1.0);
    double f_hi = fb(t_hi);
    while (f_hi > 0.0) {
      t_hi *= 2.0;
      if (t_hi > 1e12) {
        throw SolverError(ErrorKind::BracketFailure, "boundary volume stays above target");
      }
      f_hi = fb(t_hi);
    }
    auto roots = internal::scan_roots(fb, t_lo, t_hi, opts.prescan_samples, opts.param_tol,
                                      f_tol, opts.max_bisections);
    if (roots.empty()) {
      throw SolverError(ErrorKind::ScanFailure, "seam-degenerate boundary scan found no root");
    }
    ShootOutcome out;
    for (double t : roots) {
      SteadyState st = assemble_boundary_state(t, cc, pp, opts);
      out.states.push_back(mirrored ? mirror_state(std::move(st), c, p) : std::move(st));
    }
    out.principal = 0;
    return out;
  }

  ThresholdScan ts = thresholds_canonical(cc, pp, opts);

  ShootOutcome out;
  std::vector<double> interior_roots;
  if (V >= ts.th.v_m - f_tol) {
    auto fi = [&](double pm) { return interior_volume(pm, cc, pp, opts.quad_tol).volume - V; };
    BranchScan sc = ts.interior;
    // The volume grows like sqrt(psi_m - seam) off the seam, so the first
    // cell is solved in that root variable; plain bisection in psi_m cannot
    // reach the closure tolerance against an infinite derivative.
    if (!sc.vals.empty()) {
      const double seam = sc.xs.front();
      const double f0 = sc.vals.front() - V;
      if (std::fabs(f0) <= f_tol) {
        interior_roots.push_back(seam);
      } else if (sc.vals.size() > 1) {
        const double f1 = sc.vals[1] - V;
        if ((f0 > 0.0) != (f1 > 0.0) && f1 != 0.0) {
          auto fs = [&](double s) { return fi(seam + s * s); };
          const double s_hi = std::sqrt(sc.xs[1] - seam);
          auto r = internal::bisect(fs, 0.0, s_hi, f0, f1, 1e-9, f_tol,
                                    opts.max_bisections);
          interior_roots.push_back(seam + r.root * r.root);
        }
      }
    }
    // extend toward psi_m -> 0- until the scan tops the target
    double pm_last = sc.xs.back();
    double v_last = sc.vals.back();
    int guard = 0;
    while (v_last < V && guard++ < 200) {
      pm_last *= 0.5;
      if (pm_last > -1e-14) {
        throw SolverError(ErrorKind::ScanFailure,
                          "interior volume failed to reach the target near psi_m = 0");
      }
      v_last = interior_volume(pm_last, cc, pp, opts.quad_tol).volume;
      sc.xs.push_back(pm_last);
      sc.vals.push_back(v_last);
    }
    // the first cell was handled above in the root variable
    BranchScan tail;
    tail.xs.assign(sc.xs.begin() + 1, sc.xs.end());
    tail.vals.assign(sc.vals.begin() + 1, sc.vals.end());
    collect_bracket_roots(tail, V, fi, opts.param_tol, f_tol, opts.max_bisections,
                          &interior_roots);
  }

  std::vector<double> boundary_roots;
  if (V <= ts.th.v_1 + f_tol && cc.psi1 != cc.psi2) {
    auto fb = [&](double t) { return boundary_volume_at(t, cc, pp, opts.quad_tol) - V; };
    BranchScan sc = ts.boundary;
    if (!sc.vals.empty() && std::fabs(sc.vals.front() - V) <= f_tol) {
      boundary_roots.push_back(sc.xs.front());
    }
    double t_last = sc.xs.back();
    double v_last = sc.vals.back();
    int guard = 0;
    while (v_last > V && guard++ < 200) {
      t_last *= 2.0;
      v_last = boundary_volume_at(t_last, cc, pp, opts.quad_tol);
      sc.xs.push_back(t_last);
      sc.vals.push_back(v_last);
    }
    collect_bracket_roots(sc, V, fb, opts.param_tol, f_tol, opts.max_bisections,
                          &boundary_roots);
  }

  auto dedupe = [&](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end(),
                        [&](double a, double b) {
                          return std::fabs(a - b) <= 10.0 * opts.param_tol +
                                                         1e-12 * std::fabs(a);
                        }),
            v.end());
  };
  dedupe(interior_roots);
  dedupe(boundary_roots);
  for (double pm : interior_roots) {
    SteadyState st = assemble_interior_state(pm, cc, pp, opts);
    out.states.push_back(mirrored ? mirror_state(std::move(st), c, p) : std::move(st));
  }
  for (double t : boundary_roots) {
    SteadyState st = assemble_boundary_state(t, cc, pp, opts);
    out.states.push_back(mirrored ? mirror_state(std::move(st), c, p) : std::move(st));
  }
  if (out.states.empty()) {
    std::ostringstream os;
    os << "no branch root found for V = " << V << " (v_m = " << ts.th.v_m
       << ", v_1 = " << ts.th.v_1 << "); existence is guaranteed, this is a solver defect";
    throw SolverError(ErrorKind::ScanFailure, os.str());
  }
  out.principal = 0;
  if (out.states.size() > 1) {
    std::ostringstream os;
    os << out.states.size() << " branch roots found; first interior root is principal";
    out.diagnostics.push_back(os.str());
  }
  return out;
}

}  // namespace capwedge::case_same
