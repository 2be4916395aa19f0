#include "capwedge/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "capwedge/error.hpp"

namespace capwedge {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool segments_intersect(const std::array<double, 2>& p1, const std::array<double, 2>& p2,
                        const std::array<double, 2>& q1, const std::array<double, 2>& q2) {
  auto orient = [](const std::array<double, 2>& a, const std::array<double, 2>& b,
                   const std::array<double, 2>& c) {
    const double v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    return (v > 0.0) - (v < 0.0);
  };
  const int o1 = orient(p1, p2, q1);
  const int o2 = orient(p1, p2, q2);
  const int o3 = orient(q1, q2, p1);
  const int o4 = orient(q1, q2, p2);
  return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

// Finite-difference step per the residual design: h = max(1e-7, 1e-4 * local
// spacing), capped so a stencil can never leave a short segment.
double fd_step(const SegmentSpec& s, int samples) {
  const double range = std::fabs(s.psi_end - s.psi_start);
  const double spacing = range / std::max(1, samples - 1);
  return std::min(std::max(1e-7, 1e-4 * spacing), 0.125 * range);
}

// sin(psi) achieved by the closed forms at psi, from a 3-point one-sided
// derivative and the slope identity sin(psi) = (dy/dpsi) * g * y / sigma.
// Differencing y^2 instead of y keeps the stencil well conditioned next to an
// apex endpoint, where y has a square-root cusp: y (y)' = (y^2)'/2 exactly.
double endpoint_sin_psi(const SegmentSpec& s, double psi, double h, double into,
                        double g, double sigma) {
  auto ysq = [&s](double v) {
    const double y = s.height(v);
    return y * y;
  };
  const double q0 = ysq(psi);
  const double q1 = ysq(psi + into * h);
  const double q2 = ysq(psi + into * 2.0 * h);
  const double dq = (-3.0 * q0 + 4.0 * q1 - q2) / (2.0 * h) * into;
  return 0.5 * dq * g / sigma;
}

}  // namespace

ShiftedCurve reconstruct(const std::vector<SegmentSpec>& specs, int samples_per_segment) {
  if (samples_per_segment < 2) {
    throw SolverError(ErrorKind::DomainError, "need at least 2 samples per segment");
  }
  ShiftedCurve out;
  for (const auto& s : specs) {
    std::vector<SamplePoint> pts;
    pts.reserve(samples_per_segment);
    const int n = samples_per_segment;
    double x = s.x_start;
    for (int i = 0; i < n; ++i) {
      // exact endpoints, uniform interior spacing
      const double psi = (i == 0) ? s.psi_start
                       : (i == n - 1) ? s.psi_end
                       : s.psi_start + (s.psi_end - s.psi_start) * static_cast<double>(i) /
                             static_cast<double>(n - 1);
      if (i > 0) {
        x += s.x_increment(pts.back().psi, psi);
      }
      pts.push_back({psi, x, s.height(psi)});
    }
    out.segments.push_back(std::move(pts));
  }
  return out;
}

std::vector<std::array<double, 2>> to_physical(const ShiftedCurve& curve, double P0, double g) {
  std::vector<std::array<double, 2>> out;
  const double shift = P0 / g;
  for (const auto& seg : curve.segments) {
    for (const auto& p : seg) {
      const double x = p.x;
      const double y = p.y + shift;
      if (!out.empty()) {
        // merge the duplicated apex sample at a segment seam
        const double scale = 1.0 + std::fabs(x) + std::fabs(y);
        if (std::fabs(out.back()[0] - x) < 1e-11 * scale &&
            std::fabs(out.back()[1] - y) < 1e-11 * scale) {
          continue;
        }
      }
      out.push_back({x, y});
    }
  }
  return out;
}

PolarConversion to_polar(const std::vector<std::array<double, 2>>& physical) {
  PolarConversion out;
  out.samples.reserve(physical.size());
  for (const auto& p : physical) {
    const double rho = std::hypot(p[0], p[1]);
    if (rho < 1e-12) {
      throw SolverError(ErrorKind::DomainError,
                        "degenerate-sample: curve point at the wall vertex");
    }
    out.samples.push_back({std::atan2(p[1], p[0]), rho});
  }
  bool inc = true, dec = true;
  for (size_t i = 1; i < out.samples.size(); ++i) {
    if (out.samples[i][0] <= out.samples[i - 1][0]) inc = false;
    if (out.samples[i][0] >= out.samples[i - 1][0]) dec = false;
  }
  out.monotone = (out.samples.size() >= 2) && (inc || dec);
  return out;
}

double shoelace_area(const std::vector<std::array<double, 2>>& polygon,
                     bool* self_intersection_diagnostic) {
  double twice = 0.0;
  const size_t n = polygon.size();
  for (size_t i = 0; i < n; ++i) {
    const auto& a = polygon[i];
    const auto& b = polygon[(i + 1) % n];
    twice += a[0] * b[1] - b[0] * a[1];
  }
  if (self_intersection_diagnostic != nullptr) {
    *self_intersection_diagnostic = false;
    // coarse scan: decimate to ~64 edges
    const size_t stride = std::max<size_t>(1, n / 64);
    std::vector<std::array<double, 2>> coarse;
    for (size_t i = 0; i < n; i += stride) coarse.push_back(polygon[i]);
    const size_t m = coarse.size();
    for (size_t i = 0; i + 1 < m && !*self_intersection_diagnostic; ++i) {
      for (size_t j = i + 2; j < m; ++j) {
        if (i == 0 && j == m - 1) continue;
        if (segments_intersect(coarse[i], coarse[i + 1], coarse[j], coarse[(j + 1) % m])) {
          *self_intersection_diagnostic = true;
          break;
        }
      }
    }
  }
  return std::fabs(twice) / 2.0;
}

double enclosed_area_physical(const std::vector<std::array<double, 2>>& physical_curve) {
  std::vector<std::array<double, 2>> poly;
  poly.reserve(physical_curve.size() + 1);
  poly.push_back({0.0, 0.0});  // wall vertex
  for (const auto& p : physical_curve) poly.push_back(p);
  return shoelace_area(poly);
}

ResidualReport compute_residuals(const SteadyState& state) {
  ResidualReport rep;
  const double g = state.params.g;
  const double sigma = state.params.sigma;

  if (!state.segment_specs.empty()) {
    // Evaluator path: tight stencils around the stored sample angles.
    const int n_res = 257;
    double ode = 0.0;
    for (const auto& s : state.segment_specs) {
      const double h = fd_step(s, n_res);
      const bool graph = std::max(std::fabs(s.psi_start), std::fabs(s.psi_end)) < kPi / 2.0 - 1e-3;
      const double range = std::fabs(s.psi_end - s.psi_start);
      const bool apex_start = std::fabs(s.height(s.psi_start)) < 1e-12;
      const bool apex_end = std::fabs(s.height(s.psi_end)) < 1e-12;
      for (int i = 1; i + 1 < n_res; ++i) {
        const double psi = s.psi_start + (s.psi_end - s.psi_start) * static_cast<double>(i) /
                               static_cast<double>(n_res - 1);
        // keep the stencil strictly inside the segment (singular endpoints)
        const double gap =
            std::min(std::fabs(psi - s.psi_start), std::fabs(psi - s.psi_end));
        const double hi = std::min(h, 0.45 * gap);
        if (hi <= 0.0) continue;
        const double y = s.height(psi);
        // next to an apex the square-root cusp makes both difference forms
        // ill conditioned in y; difference y^2 there instead, using
        // (dy/dpsi) y = (y^2)'/2
        const bool near_apex = (apex_start && std::fabs(psi - s.psi_start) < 0.01 * range) ||
                               (apex_end && std::fabs(psi - s.psi_end) < 0.01 * range) ||
                               range < 1e-3;
        double r;
        if (graph && !near_apex) {
          // sigma * d(sin psi)/dx against g*y (shifted frame)
          const double dx = s.x_increment(psi - hi, psi + hi);
          if (dx == 0.0) continue;
          const double dsin = std::sin(psi + hi) - std::sin(psi - hi);
          r = std::fabs(sigma * dsin / dx - g * y);
        } else {
          // psi-parametrized form (dy/dpsi) g y = sigma sin psi via y^2
          const double yp = s.height(psi + hi);
          const double ym = s.height(psi - hi);
          const double dq = (yp * yp - ym * ym) / (2.0 * hi);
          r = std::fabs(0.5 * dq * g - sigma * std::sin(psi));
        }
        ode = std::max(ode, r);
      }
    }
    rep.ode_residual = ode;

    const auto& first = state.segment_specs.front();
    const auto& last = state.segment_specs.back();
    const double h1 = fd_step(first, n_res);
    const double h2 = fd_step(last, n_res);
    const double into1 = (first.psi_end > first.psi_start) ? 1.0 : -1.0;
    const double into2 = (last.psi_start > last.psi_end) ? 1.0 : -1.0;
    const double sin_left = endpoint_sin_psi(first, first.psi_start, h1, into1, g, sigma);
    const double sin_right = endpoint_sin_psi(last, last.psi_end, h2, into2, g, sigma);
    rep.bc_residual = std::max(std::fabs(sin_left - std::sin(state.config.psi1)),
                               std::fabs(sin_right - std::sin(state.config.psi2)));

    // dense reconstruction for the area arbiter
    ShiftedCurve dense = reconstruct(state.segment_specs, 4097);
    const auto phys = to_physical(dense, state.P0, g);
    const double area = enclosed_area_physical(phys);
    rep.area_residual = std::fabs(area - state.params.volume) /
                        std::max(state.params.volume, 1e-12);
  } else {
    // Sample path: central differences over the stored points.
    double ode = 0.0;
    for (const auto& seg : state.shifted.segments) {
      for (size_t i = 1; i + 1 < seg.size(); ++i) {
        const double dx = seg[i + 1].x - seg[i - 1].x;
        if (dx == 0.0) continue;
        const double dsin = std::sin(seg[i + 1].psi) - std::sin(seg[i - 1].psi);
        ode = std::max(ode, std::fabs(sigma * dsin / dx - g * seg[i].y));
      }
    }
    rep.ode_residual = ode;
    double bc = 0.0;
    if (!state.shifted.segments.empty()) {
      const auto& f = state.shifted.segments.front();
      const auto& l = state.shifted.segments.back();
      if (!f.empty()) bc = std::fabs(std::sin(f.front().psi) - std::sin(state.config.psi1));
      if (!l.empty()) {
        bc = std::max(bc, std::fabs(std::sin(l.back().psi) - std::sin(state.config.psi2)));
      }
    }
    rep.bc_residual = bc;
    const double area = enclosed_area_physical(state.curve);
    rep.area_residual = std::fabs(area - state.params.volume) /
                        std::max(state.params.volume, 1e-12);
  }

  PolarConversion polar = to_polar(state.curve);
  rep.polar_monotone = polar.monotone;
  rep.polar_samples = std::move(polar.samples);
  return rep;
}

bool residuals_pass(const ResidualReport& r, const ResidualThresholds& t) {
  return r.ode_residual < t.ode && r.bc_residual < t.bc && r.area_residual < t.area &&
         r.polar_monotone;
}

std::string curve_csv_shifted(const ShiftedCurve& curve) {
  std::ostringstream os;
  os << "psi,x,y\n";
  for (const auto& seg : curve.segments) {
    for (const auto& p : seg) {
      os << format_g17(p.psi) << ',' << format_g17(p.x) << ',' << format_g17(p.y) << '\n';
    }
  }
  return os.str();
}

std::string curve_csv_physical(const std::vector<std::array<double, 2>>& physical) {
  std::ostringstream os;
  os << "theta,rho,x,y\n";
  for (const auto& p : physical) {
    const double rho = std::hypot(p[0], p[1]);
    const double theta = std::atan2(p[1], p[0]);
    os << format_g17(theta) << ',' << format_g17(rho) << ','
       << format_g17(p[0]) << ',' << format_g17(p[1]) << '\n';
  }
  return os.str();
}

const char* branch_name(Branch b) {
  switch (b) {
    case Branch::OppositeMax: return "opposite-max";
    case Branch::OppositeMin: return "opposite-min";
    case Branch::SameInterior: return "same-interior";
    case Branch::SameBoundary: return "same-boundary";
  }
  return "unknown";
}

const char* shoot_param_kind_name(ShootParamKind k) {
  switch (k) {
    case ShootParamKind::ApexHeight: return "u_m";
    case ShootParamKind::ApexAngle: return "psi_m";
    case ShootParamKind::ContactHeight: return "u_1";
  }
  return "unknown";
}

}  // namespace capwedge
