#pragma once

// Shared internals of the branch solvers: wall-line algebra in forms that stay
// finite for vertical walls, the memoized radial-distance integral, and the
// bracketing/bisection helpers used by the shooting routines.

#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "capwedge/error.hpp"
#include "capwedge/model.hpp"

namespace capwedge::internal {

constexpr double kPi = 3.14159265358979323846;

inline double cot(double theta) { return std::cos(theta) / std::sin(theta); }

// x_m = (r1 tan t1 - r2 tan t2 - (u1-u2)) / (tan t1 + tan t2), multiplied
// through by cos t1 cos t2: finite at theta = pi/2, denominator sin(t1+t2).
inline double apex_abscissa(double r1, double r2, double u1, double u2,
                            double theta1, double theta2) {
  const double den = std::sin(theta1 + theta2);
  if (std::fabs(den) < 1e-12) {
    throw SolverError(ErrorKind::DegenerateGeometry,
                      "wall angles make sin(theta1+theta2) vanish");
  }
  const double c1 = std::cos(theta1), c2 = std::cos(theta2);
  const double s1 = std::sin(theta1), s2 = std::sin(theta2);
  return (r1 * s1 * c2 - r2 * s2 * c1 - (u1 - u2) * c1 * c2) / den;
}

// x1 = (-r2 tan t2 + (u2-u1)) / (tan t1 + tan t2) in the same stabilized form.
inline double left_contact_abscissa(double r2, double u1, double u2,
                                    double theta1, double theta2) {
  const double den = std::sin(theta1 + theta2);
  if (std::fabs(den) < 1e-12) {
    throw SolverError(ErrorKind::DegenerateGeometry,
                      "wall angles make sin(theta1+theta2) vanish");
  }
  const double c1 = std::cos(theta1), c2 = std::cos(theta2);
  const double s1 = std::sin(theta1), s2 = std::sin(theta2);
  return (-r2 * s2 * c1 + (u2 - u1) * c1 * c2) / den;
}

// Shifted-frame wall vertex height from the contact points, using whichever
// wall is farther from vertical; consistency of the two walls is checked when
// both are usable.
inline double vertex_height(double x1, double u1, double x2, double u2,
                            double theta1, double theta2) {
  const double c1 = std::fabs(std::cos(theta1));
  const double c2 = std::fabs(std::cos(theta2));
  const double y0_left = u1 + x1 * std::tan(theta1);
  const double y0_right = u2 - x2 * std::tan(theta2);
  const double scale = 1.0 + std::fabs(u1) + std::fabs(u2) + std::fabs(x1) + std::fabs(x2);
  if (c1 > 1e-8 && c2 > 1e-8 && std::fabs(y0_left - y0_right) > 1e-7 * scale) {
    std::ostringstream os;
    os << "wall lines do not meet at a common vertex: y0_left=" << y0_left
       << " y0_right=" << y0_right;
    throw SolverError(ErrorKind::DegenerateGeometry, os.str());
  }
  return (c2 >= c1) ? y0_right : y0_left;
}

// Incrementally accumulated integral I(psi) = integral_anchor^psi k(phi) dphi,
// cached at every requested angle so an outer adaptive quadrature can call it
// without re-integrating from the anchor each time. The cache is per instance;
// increment(a, b) must return the signed integral of the kernel over [a, b].
class IncrementalIntegral {
 public:
  IncrementalIntegral(std::function<double(double, double)> increment, double anchor)
      : increment_(std::move(increment)) {
    cache_[anchor] = 0.0;
  }

  double operator()(double psi) {
    auto it = cache_.lower_bound(psi);
    double base_psi, base_val;
    if (it != cache_.end() && it->first == psi) return it->second;
    if (it == cache_.begin()) {
      base_psi = it->first;
      base_val = it->second;
    } else if (it == cache_.end()) {
      auto prev = std::prev(it);
      base_psi = prev->first;
      base_val = prev->second;
    } else {
      auto prev = std::prev(it);
      // nearest cached anchor
      if (psi - prev->first <= it->first - psi) {
        base_psi = prev->first;
        base_val = prev->second;
      } else {
        base_psi = it->first;
        base_val = it->second;
      }
    }
    const double val = base_val + increment_(base_psi, psi);
    cache_[psi] = val;
    return val;
  }

 private:
  std::function<double(double, double)> increment_;
  std::map<double, double> cache_;
};

struct RootSolveResult {
  double root = 0.0;
  int iterations = 0;
};

// Plain bisection on a bracket with f(lo) and f(hi) of opposite signs.
inline RootSolveResult bisect(const std::function<double(double)>& f, double lo, double hi,
                              double f_lo, double f_hi, double x_tol, double f_tol,
                              int max_iter) {
  if (f_lo == 0.0) return {lo, 0};
  if (f_hi == 0.0) return {hi, 0};
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw SolverError(ErrorKind::BracketFailure, "bisection bracket does not change sign");
  }
  double mid = 0.5 * (lo + hi);
  int it = 0;
  for (; it < max_iter; ++it) {
    mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::fabs(fm) <= f_tol || (hi - lo) <= x_tol || mid == lo || mid == hi) {
      return {mid, it + 1};
    }
    if ((fm > 0.0) == (f_hi > 0.0)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  throw SolverError(ErrorKind::NoConvergence, "bisection exceeded the iteration budget");
}

// All roots of f on [lo, hi] located by a uniform scan plus bisection on each
// sign change. Returns roots in ascending order.
inline std::vector<double> scan_roots(const std::function<double(double)>& f, double lo,
                                      double hi, int samples, double x_tol, double f_tol,
                                      int max_iter) {
  std::vector<double> roots;
  double prev_x = lo;
  double prev_f = f(lo);
  for (int i = 1; i <= samples; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / samples;
    const double fx = f(x);
    if (prev_f == 0.0) {
      roots.push_back(prev_x);
    } else if (fx != 0.0 && (prev_f > 0.0) != (fx > 0.0)) {
      roots.push_back(bisect(f, prev_x, x, prev_f, fx, x_tol, f_tol, max_iter).root);
    }
    prev_x = x;
    prev_f = fx;
  }
  if (prev_f == 0.0) roots.push_back(prev_x);
  return roots;
}

// Golden-section minimization of f on [a, b] (unimodal assumed near the seed).
inline double golden_min(const std::function<double(double)>& f, double a, double b,
                         double tol) {
  const double gr = 0.6180339887498949;
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace capwedge::internal
