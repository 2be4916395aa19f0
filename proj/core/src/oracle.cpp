#include "capwedge/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "capwedge/error.hpp"

namespace capwedge::oracle {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_grid(const PolarGrid& g) {
  if (g.theta.size() != g.rho.size() || g.theta.size() < 16) {
    throw SolverError(ErrorKind::DomainError, "polar grid needs N >= 16 matching nodes");
  }
  for (double r : g.rho) {
    if (!(r > 0.0)) {
      throw SolverError(ErrorKind::DomainError, "polar grid radii must be positive");
    }
  }
}

std::vector<double> trapezoid_weights(const std::vector<double>& theta) {
  const size_t n = theta.size();
  const double h = (theta.back() - theta.front()) / static_cast<double>(n - 1);
  std::vector<double> w(n, h);
  w.front() = 0.5 * h;
  w.back() = 0.5 * h;
  return w;
}

// rho' by central differences, one-sided at the ends.
std::vector<double> slopes(const PolarGrid& g) {
  const size_t n = g.rho.size();
  const double h = (g.theta.back() - g.theta.front()) / static_cast<double>(n - 1);
  std::vector<double> d(n);
  d[0] = (g.rho[1] - g.rho[0]) / h;
  d[n - 1] = (g.rho[n - 1] - g.rho[n - 2]) / h;
  for (size_t i = 1; i + 1 < n; ++i) d[i] = (g.rho[i + 1] - g.rho[i - 1]) / (2.0 * h);
  return d;
}

double project_to_volume(PolarGrid& g, double V) {
  const double cur = volume_of(g);
  const double scale = std::sqrt(V / cur);
  for (double& r : g.rho) r *= scale;
  return scale;
}

PolarGrid resample_to(const PolarGrid& fine, int n) {
  PolarGrid coarse;
  coarse.theta.resize(n);
  coarse.rho.resize(n);
  const double a = fine.theta.front();
  const double b = fine.theta.back();
  for (int i = 0; i < n; ++i) {
    const double th = a + (b - a) * static_cast<double>(i) / (n - 1);
    // linear interpolation on the fine grid
    const double pos = (th - a) / (b - a) * static_cast<double>(fine.theta.size() - 1);
    const size_t j = std::min(fine.theta.size() - 2, static_cast<size_t>(pos));
    const double t = pos - static_cast<double>(j);
    coarse.theta[i] = th;
    coarse.rho[i] = (1.0 - t) * fine.rho[j] + t * fine.rho[j + 1];
  }
  return coarse;
}

struct DescentOutcome {
  long iterations = 0;
  double grad_norm = 0.0;
  bool converged = false;
};

double constrained_grad_norm(const std::vector<double>& gE, const std::vector<double>& gV,
                             double* multiplier) {
  double eg = 0.0, vv = 0.0;
  for (size_t i = 0; i < gE.size(); ++i) {
    eg += gE[i] * gV[i];
    vv += gV[i] * gV[i];
  }
  const double mult = eg / vv;
  double norm2 = 0.0;
  for (size_t i = 0; i < gE.size(); ++i) {
    const double c = gE[i] - mult * gV[i];
    norm2 += c * c;
  }
  if (multiplier != nullptr) *multiplier = mult;
  return std::sqrt(norm2);
}

DescentOutcome descend(PolarGrid& g, const FluidParams& p, const MinimizeOptions& opts,
                       long budget) {
  const double V = p.volume;
  const double range = g.theta.back() - g.theta.front();
  double alpha = opts.step_factor * V / range;
  const double alpha0 = alpha;
  project_to_volume(g, V);
  double e_cur = energy(g, p);
  auto weights = trapezoid_weights(g.theta);

  DescentOutcome out;
  for (long it = 0; it < budget; ++it) {
    out.iterations = it;
    std::vector<double> gE = energy_gradient(g, p);
    std::vector<double> gV(g.rho.size());
    for (size_t i = 0; i < gV.size(); ++i) gV[i] = weights[i] * g.rho[i];
    double mult = 0.0;
    out.grad_norm = constrained_grad_norm(gE, gV, &mult);
    g.multiplier = mult;
    if (out.grad_norm < opts.grad_tol) {
      out.converged = true;
      return out;
    }
    // Step along the volume-tangential component; the multiplicative rescale
    // then only has to absorb a second-order volume drift, so the step is a
    // strict descent direction whenever the constrained gradient is nonzero.
    std::vector<double> dir(g.rho.size());
    for (size_t i = 0; i < dir.size(); ++i) dir[i] = gE[i] - mult * gV[i];

    bool accepted = false;
    while (!accepted) {
      PolarGrid trial = g;
      bool positive = true;
      for (size_t i = 0; i < trial.rho.size(); ++i) {
        trial.rho[i] = g.rho[i] - alpha * dir[i];
        if (!(trial.rho[i] > 0.0)) positive = false;
      }
      if (positive) {
        project_to_volume(trial, V);
        const double e_new = energy(trial, p);
        if (e_new < e_cur) {
          g = std::move(trial);
          e_cur = e_new;
          accepted = true;
          alpha = std::min(alpha * 1.25, 16.0 * alpha0);
          break;
        }
      }
      alpha *= 0.5;
      if (alpha < 1e-18 * alpha0) {
        // stalled at the resolution of the energy evaluation
        return out;
      }
    }
  }
  return out;
}

}  // namespace

PolarGrid constant_grid(const FluidParams& p, int n) {
  if (n < 16) throw SolverError(ErrorKind::DomainError, "polar grid needs N >= 16");
  validate_params(p);
  PolarGrid g;
  const double a = p.theta2;
  const double b = kPi - p.theta1;
  const double range = b - a;
  const double r = std::sqrt(2.0 * p.volume / range);
  g.theta.resize(n);
  g.rho.assign(n, r);
  for (int i = 0; i < n; ++i) {
    g.theta[i] = a + range * static_cast<double>(i) / (n - 1);
  }
  return g;
}

PolarGrid grid_from_state(const SteadyState& state, int n) {
  if (n < 16) throw SolverError(ErrorKind::DomainError, "polar grid needs N >= 16");
  PolarConversion pc = to_polar(state.curve);
  if (!pc.monotone) {
    throw SolverError(ErrorKind::DomainError,
                      "state curve is not a polar graph; cannot build an oracle grid");
  }
  std::vector<std::array<double, 2>> samples = pc.samples;
  if (samples.front()[0] > samples.back()[0]) {
    std::reverse(samples.begin(), samples.end());
  }
  const FluidParams& p = state.params;
  PolarGrid g;
  const double a = p.theta2;
  const double b = kPi - p.theta1;
  g.theta.resize(n);
  g.rho.resize(n);
  size_t j = 0;
  for (int i = 0; i < n; ++i) {
    const double th = a + (b - a) * static_cast<double>(i) / (n - 1);
    g.theta[i] = th;
    while (j + 2 < samples.size() && samples[j + 1][0] < th) ++j;
    const double t0 = samples[j][0], t1 = samples[j + 1][0];
    const double r0 = samples[j][1], r1 = samples[j + 1][1];
    double t = (th - t0) / (t1 - t0);
    t = std::clamp(t, 0.0, 1.0);
    g.rho[i] = (1.0 - t) * r0 + t * r1;
  }
  return g;
}

double energy(const PolarGrid& g, const FluidParams& p) {
  check_grid(g);
  auto w = trapezoid_weights(g.theta);
  auto d = slopes(g);
  double grav = 0.0, surf = 0.0;
  for (size_t i = 0; i < g.rho.size(); ++i) {
    grav += w[i] * g.rho[i] * g.rho[i] * g.rho[i] * std::sin(g.theta[i]);
    surf += w[i] * std::sqrt(g.rho[i] * g.rho[i] + d[i] * d[i]);
  }
  return (p.g / 3.0) * grav + p.sigma * surf -
         p.gamma_jump * (g.rho.front() + g.rho.back());
}

std::vector<double> energy_gradient(const PolarGrid& g, const FluidParams& p) {
  check_grid(g);
  const size_t n = g.rho.size();
  const double h = (g.theta.back() - g.theta.front()) / static_cast<double>(n - 1);
  auto w = trapezoid_weights(g.theta);
  auto d = slopes(g);
  std::vector<double> grad(n, 0.0);

  for (size_t i = 0; i < n; ++i) {
    const double si = std::sqrt(g.rho[i] * g.rho[i] + d[i] * d[i]);
    // gravity term
    grad[i] += p.g * w[i] * g.rho[i] * g.rho[i] * std::sin(g.theta[i]);
    // surface term, rho factor
    grad[i] += p.sigma * w[i] * g.rho[i] / si;
  }
  // surface term, slope factor: d_i depends on neighbors (one-sided at ends)
  auto slope_coef = [&](size_t i) {
    const double si = std::sqrt(g.rho[i] * g.rho[i] + d[i] * d[i]);
    return p.sigma * w[i] * d[i] / si;
  };
  // d0 = (rho1 - rho0)/h
  grad[1] += slope_coef(0) / h;
  grad[0] -= slope_coef(0) / h;
  // d_{n-1} = (rho_{n-1} - rho_{n-2})/h
  grad[n - 1] += slope_coef(n - 1) / h;
  grad[n - 2] -= slope_coef(n - 1) / h;
  for (size_t i = 1; i + 1 < n; ++i) {
    const double c = slope_coef(i) / (2.0 * h);
    grad[i + 1] += c;
    grad[i - 1] -= c;
  }
  grad[0] -= p.gamma_jump;
  grad[n - 1] -= p.gamma_jump;
  return grad;
}

double volume_of(const PolarGrid& g) {
  check_grid(g);
  auto w = trapezoid_weights(g.theta);
  double v = 0.0;
  for (size_t i = 0; i < g.rho.size(); ++i) v += 0.5 * w[i] * g.rho[i] * g.rho[i];
  return v;
}

MinimizeResult minimize(const FluidParams& p, PolarGrid init, const MinimizeOptions& opts) {
  validate_params(p);
  check_grid(init);
  if (!(p.volume > 0.0)) {
    throw SolverError(ErrorKind::DomainError, "minimize requires a positive target volume");
  }

  const int n_target = static_cast<int>(init.theta.size());
  MinimizeResult res;
  long used = 0;

  if (opts.cascade && n_target > 2 * opts.cascade_base) {
    // Coarse-to-fine: the plain iteration is stiffness-limited on fine grids.
    // Converge the coarse shape first, prolong, and extrapolate the O(h^2)
    // discretization shift out of the warm start using the two previous
    // levels, so each level only has to polish high-frequency error.
    std::vector<int> levels;
    for (int n = n_target; n > opts.cascade_base; n = (n + 1) / 2) levels.push_back(n);
    levels.push_back(opts.cascade_base);
    std::reverse(levels.begin(), levels.end());

    PolarGrid g = resample_to(init, levels.front());
    PolarGrid coarser;  // solution one level down, for the extrapolated init
    for (size_t li = 0; li < levels.size(); ++li) {
      if (li > 0) {
        PolarGrid fine = resample_to(g, levels[li]);
        if (!coarser.theta.empty()) {
          PolarGrid fine_prev = resample_to(coarser, levels[li]);
          bool positive = true;
          PolarGrid extrap = fine;
          for (size_t i = 0; i < extrap.rho.size(); ++i) {
            extrap.rho[i] = fine.rho[i] + (fine.rho[i] - fine_prev.rho[i]) / 3.0;
            if (!(extrap.rho[i] > 0.0)) positive = false;
          }
          if (positive) fine = std::move(extrap);
        }
        coarser = std::move(g);
        g = std::move(fine);
      }
      const long budget =
          std::max<long>(2000, (opts.max_iterations - used) / static_cast<long>(levels.size()));
      DescentOutcome d = descend(g, p, opts, std::min<long>(budget, opts.max_iterations - used));
      used += d.iterations;
      res.grad_norm = d.grad_norm;
      res.converged = d.converged;
      if (used >= opts.max_iterations) break;
    }
    // make sure the final level matches the requested node count exactly
    if (static_cast<int>(g.theta.size()) != n_target) g = resample_to(g, n_target);
    DescentOutcome d = descend(g, p, opts, std::max<long>(1, opts.max_iterations - used));
    used += d.iterations;
    res.grad_norm = d.grad_norm;
    res.converged = d.converged;
    res.grid = std::move(g);
  } else {
    PolarGrid g = std::move(init);
    DescentOutcome d = descend(g, p, opts, opts.max_iterations);
    used = d.iterations;
    res.grad_norm = d.grad_norm;
    res.converged = d.converged;
    res.grid = std::move(g);
  }

  res.iterations = used;
  res.multiplier = res.grid.multiplier;
  return res;
}

}  // namespace capwedge::oracle
