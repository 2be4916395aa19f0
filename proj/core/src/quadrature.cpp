#include "capwedge/quadrature.hpp"

#include <algorithm>
#include <set>
#include <cmath>
#include <sstream>
#include <cstdio>

#include "capwedge/error.hpp"
#include "capwedge/trig.hpp"

namespace capwedge::quadrature {

namespace {

// Gauss-Kronrod 7/15 rule on [-1, 1] (QUADPACK abscissae and weights).
constexpr int kGkPoints = 15;
constexpr double kNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWeightsK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
// Gauss-7 weights aligned with nodes 1, 3, 5, 7 (odd Kronrod indices).
constexpr double kWeightsG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct PanelEstimate {
  double value;
  double error;
  double abs_value;  // integral of |f|, for the roundoff floor
};

PanelEstimate gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[kGkPoints];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kNodes[i]);
    fv[14 - i] = f(c + h * kNodes[i]);
  }
  fv[7] = f(c);

  double kres = kWeightsK[7] * fv[7];
  double gres = kWeightsG[3] * fv[7];
  double kabs = kWeightsK[7] * std::fabs(fv[7]);
  for (int i = 0; i < 7; ++i) {
    kres += kWeightsK[i] * (fv[i] + fv[14 - i]);
    kabs += kWeightsK[i] * (std::fabs(fv[i]) + std::fabs(fv[14 - i]));
    if (i % 2 == 1) {
      gres += kWeightsG[i / 2] * (fv[i] + fv[14 - i]);
    }
  }
  kres *= h;
  gres *= h;
  kabs *= std::fabs(h);
  return {kres, std::fabs(kres - gres), kabs};
}

// Global-error worklist: repeatedly split the panel with the largest error
// estimate until the total is under tol. A panel whose split does not shrink
// the error is at the integrand's noise floor and is frozen instead of being
// subdivided forever (nested quadratures make the integrand slightly noisy).
struct Panel {
  double a, b;
  double value, error, abs_value;
  bool frozen;
};

struct PanelOrder {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.frozen != y.frozen) return !x.frozen;  // splittable panels first
    if (x.error != y.error) return x.error > y.error;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  }
};

double shifted_denominator(double um, double coef, double phi) {
  return std::sqrt(um * um + coef * one_minus_cos(phi));
}

double apex_denominator(double offset, double coef, double psi_m, double phi) {
  double arg = offset * offset + coef * cos_diff(psi_m, phi);
  // cos differences can round slightly negative right at the apex
  if (arg < 0.0 && arg > -1e-15) arg = 0.0;
  return std::sqrt(arg);
}

void check_bounds_finite(const IntegralSpec& s) {
  if (!std::isfinite(s.a) || !std::isfinite(s.b)) {
    throw SolverError(ErrorKind::DomainError, "integral bounds must be finite");
  }
  if (!(s.sigma > 0.0) || !(s.g > 0.0)) {
    throw SolverError(ErrorKind::DomainError, "integral spec requires sigma > 0 and g > 0");
  }
}

}  // namespace

double numerator_value(Kernel k, double phi) {
  switch (k) {
    case Kernel::Cos: return std::cos(phi);
    case Kernel::Sin: return std::sin(phi);
    case Kernel::One: return 1.0;
  }
  return 0.0;
}

double denominator_value(const IntegralSpec& s, double phi) {
  const double coef = 2.0 * s.sigma / s.g;
  if (s.denominator == DenominatorKind::ShiftedRadical) {
    return shifted_denominator(s.param, coef, phi);
  }
  return apex_denominator(s.offset, coef, s.param, phi);
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol, int max_panels) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }

  const double eps = 2.220446049250313e-16;
  std::set<Panel, PanelOrder> panels;
  PanelEstimate first = gk15(f, a, b);
  panels.insert({a, b, first.value, first.error, first.abs_value, false});
  int used = 1;
  double total_error = first.error;

  while (total_error > tol) {
    auto it = panels.begin();
    if (it->frozen) {
      // nothing splittable remains; acceptable only near the noise floor
      if (total_error > std::max(1e3 * tol, 1e-9)) {
        std::ostringstream os;
        os << "adaptive quadrature stalled at evaluation noise with total error "
           << total_error << " above tolerance " << tol;
        throw SolverError(ErrorKind::ToleranceNotMet, os.str());
      }
      break;
    }
    const Panel parent = *it;
    const double mid = 0.5 * (parent.a + parent.b);
    if (mid <= parent.a || mid >= parent.b) {
      Panel frozen = parent;
      frozen.frozen = true;
      panels.erase(it);
      panels.insert(frozen);
      continue;
    }
    if (used + 2 > max_panels) {
      std::ostringstream os;
      char buf[160];
      std::snprintf(buf, sizeof(buf), "[%.17g, %.17g] err=%.3g total_err=%.3g tol=%.3g",
                    parent.a, parent.b, parent.error, total_error, tol);
      os << "adaptive quadrature exhausted panel budget (" << max_panels << ") at " << buf;
      throw SolverError(ErrorKind::ToleranceNotMet, os.str());
    }
    PanelEstimate l = gk15(f, parent.a, mid);
    PanelEstimate r = gk15(f, mid, parent.b);
    used += 2;
    // splitting stopped helping: the estimate is dominated by evaluation noise
    const double floor = 16.0 * eps * parent.abs_value;
    const bool stalled = (l.error + r.error > 0.9 * parent.error) &&
                         (parent.error < std::max(1e-13, 1e3 * floor));
    panels.erase(it);
    total_error -= parent.error;
    panels.insert({parent.a, mid, l.value, l.error, l.abs_value, stalled});
    panels.insert({mid, parent.b, r.value, r.error, r.abs_value, stalled});
    total_error += l.error + r.error;
  }

  double sum = 0.0;
  for (const Panel& p : panels) sum += p.value;
  return sign * sum;
}

double integrate_regular(const IntegralSpec& s) {
  check_bounds_finite(s);
  if (s.a == s.b) return 0.0;

  const double lo = std::min(s.a, s.b);
  const double hi = std::max(s.a, s.b);
  if (s.denominator == DenominatorKind::ShiftedRadical) {
    if (s.param == 0.0 && lo <= 0.0 && hi >= 0.0) {
      throw SolverError(ErrorKind::DomainError,
                        "shifted radical vanishes at phi = 0 when u_m = 0");
    }
  } else {
    const bool singular_possible = (s.offset == 0.0);
    if (singular_possible && lo <= s.param && s.param <= hi) {
      throw SolverError(ErrorKind::DomainError,
                        "apex radical vanishes at phi = psi_m inside the bounds; "
                        "use integrate_apex_singular");
    }
  }

  auto f = [&s](double phi) { return numerator_value(s.kernel, phi) / denominator_value(s, phi); };
  return integrate_adaptive(f, s.a, s.b, s.tol, s.max_panels);
}

namespace {

// Core transform for integral_far^{pm} numerator/sqrt(offset^2 + coef*(cos pm
// - cos phi)) dphi with far < pm <= 0: regular panel away from the apex plus
// the t^2 = cos(pm) - cos(phi) substituted tail. zero_limit supplies the
// substituted integrand's value at t = 0 when sin(pm) = 0 (Sin kernel case).
double apex_core(const std::function<double(double)>& numerator, double pm, double far,
                 double offset, double coef, double tol, int max_panels,
                 double zero_limit) {
  const double tail_len = std::min(0.5, pm - far);
  const double split = pm - tail_len;

  double regular_part = 0.0;
  if (far < split) {
    auto f = [&](double phi) {
      return numerator(phi) / apex_denominator(offset, coef, pm, phi);
    };
    regular_part = integrate_adaptive(f, far, split, 0.5 * tol, max_panels);
  }

  double t_max_sq = cos_diff(pm, split);
  if (t_max_sq < 0.0) t_max_sq = 0.0;

  // Integrate the tail in the radical value rho = sqrt(offset^2 + coef t^2),
  // where t^2 = cos(pm) - cos(phi): the substitution factors cancel exactly
  // and the integrand (2/coef) f(phi)/|sin phi| is analytic uniformly in the
  // offset. phi is recovered through 2 sin^2(phi/2) = 2 sin^2(pm/2) + t^2.
  const double half_pm_sin_sq = std::sin(0.5 * pm) * std::sin(0.5 * pm);
  const double rho_lo = offset;
  const double rho_hi = std::sqrt(offset * offset + coef * t_max_sq);

  double tail = 0.0;
  if (rho_hi > rho_lo) {
    auto h = [&](double rho) {
      double tsq = (rho * rho - offset * offset) / coef;
      if (tsq < 0.0) tsq = 0.0;
      double arg = std::sqrt(half_pm_sin_sq + 0.5 * tsq);
      if (arg > 1.0) arg = 1.0;
      const double phi = -2.0 * std::asin(arg);
      const double sphi = std::fabs(std::sin(phi));
      if (sphi == 0.0) return zero_limit;
      return (2.0 / coef) * numerator(phi) / sphi;
    };
    tail = integrate_adaptive(h, rho_lo, rho_hi, 0.5 * tol, max_panels);
  }
  return regular_part + tail;
}

}  // namespace

double integrate_apex_singular(const IntegralSpec& s) {
  check_bounds_finite(s);
  if (s.denominator != DenominatorKind::ApexRadical) {
    throw SolverError(ErrorKind::DomainError,
                      "integrate_apex_singular requires an ApexRadical denominator");
  }
  if (s.a == s.b) return 0.0;

  const double psi_m = s.param;
  double other;
  double sign;  // orientation of the requested integral
  if (s.b == psi_m) {
    other = s.a;
    sign = 1.0;
  } else if (s.a == psi_m) {
    other = s.b;
    sign = -1.0;  // integral from psi_m outward = -(integral toward psi_m)
  } else {
    throw SolverError(ErrorKind::DomainError,
                      "exactly one bound must equal the apex angle psi_m");
  }

  if (s.offset == 0.0 && psi_m == 0.0 && s.kernel != Kernel::Sin) {
    throw SolverError(ErrorKind::DivergentIntegral,
                      "apex integral diverges at psi_m = 0 for this kernel");
  }

  // Reflect the positive-angle branch onto the negative one. The denominator
  // is even in phi; Sin flips sign, Cos and One do not.
  double reflect = 1.0;
  double pm = psi_m;
  double far = other;
  if (psi_m > 0.0 || (psi_m == 0.0 && other > 0.0)) {
    pm = -psi_m;
    far = -other;
    sign = -sign;
    if (s.kernel == Kernel::Sin) reflect = -1.0;
  }
  if (far > pm) {
    throw SolverError(ErrorKind::DomainError,
                      "apex integral bounds must satisfy cos(psi_m) >= cos(phi)");
  }

  const double coef = 2.0 * s.sigma / s.g;
  auto numerator = [&s, reflect](double phi) {
    return reflect * numerator_value(s.kernel, phi);
  };
  // at psi_m = 0 only the Sin kernel survives: sin(phi)/|sin(phi)| -> -1
  const double zero_limit = -2.0 / coef * reflect;

  return sign *
         apex_core(numerator, pm, far, s.offset, coef, s.tol, s.max_panels, zero_limit);
}

double integrate_apex_weighted(const std::function<double(double)>& numerator, double psi_m,
                               double offset, double sigma, double g, double a, double tol,
                               int max_panels) {
  if (!(psi_m <= 0.0) || !(a < psi_m)) {
    throw SolverError(ErrorKind::DomainError,
                      "weighted apex integral expects a < psi_m <= 0");
  }
  const double coef = 2.0 * sigma / g;
  return apex_core(numerator, psi_m, a, offset, coef, tol, max_panels, 0.0);
}

}  // namespace capwedge::quadrature
