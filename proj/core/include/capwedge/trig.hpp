#pragma once

#include <cmath>

namespace capwedge {

// 1 - cos(phi) = 2 sin^2(phi/2), free of cancellation for small phi.
inline double one_minus_cos(double phi) {
  const double s = std::sin(0.5 * phi);
  return 2.0 * s * s;
}

// cos(a) - cos(b) = 2 sin((a+b)/2) sin((b-a)/2), cancellation-free for a ~ b.
inline double cos_diff(double a, double b) {
  return 2.0 * std::sin(0.5 * (a + b)) * std::sin(0.5 * (b - a));
}

}  // namespace capwedge
