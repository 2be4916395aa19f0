#include "capwedge/solver.hpp"

#include <cmath>
#include <utility>

#include "capwedge/case_opposite.hpp"
#include "capwedge/case_same.hpp"
#include "capwedge/error.hpp"

namespace capwedge {

namespace {

SteadyState empty_state(const FluidParams& p) {
  // V = 0: the fluid degenerates to the wall vertex; P0 = 0 places the vertex
  // at the origin with an empty curve.
  SteadyState st;
  st.params = p;
  st.config = derive_contact_config(p);
  st.branch = (st.config.regime == Regime::SameSign) ? Branch::SameBoundary
                                                     : Branch::OppositeMax;
  st.param_kind = ShootParamKind::ApexHeight;
  st.shoot_param = 0.0;
  st.P0 = 0.0;
  st.contact_left = {0.0, 0.0};
  st.contact_right = {0.0, 0.0};
  st.volume_total = 0.0;
  st.residuals.polar_monotone = true;
  return st;
}

}  // namespace

SolveResult solve(const FluidParams& params, const SolveOptions& opts) {
  validate_params(params);
  SolveResult out;
  out.config = derive_contact_config(params);
  classify_regime(out.config, params);

  if (params.volume == 0.0) {
    out.states.push_back(empty_state(params));
    out.principal = 0;
    out.diagnostics.push_back("volume 0: degenerate state at the wall vertex");
    return out;
  }

  switch (out.config.regime) {
    case Regime::OppositeMax: {
      auto so = case_opposite::shoot(params, out.config, opts);
      out.states = std::move(so.states);
      out.principal = so.principal;
      out.diagnostics = std::move(so.diagnostics);
      break;
    }
    case Regime::OppositeMin: {
      out.states.push_back(case_opposite::solve_opposite_min(params, out.config, opts));
      out.principal = 0;
      break;
    }
    case Regime::SameSign: {
      auto so = case_same::shoot(params, out.config, opts);
      out.states = std::move(so.states);
      out.principal = so.principal;
      out.diagnostics = std::move(so.diagnostics);
      break;
    }
  }
  return out;
}

SteadyState rebuild_state(const FluidParams& params, Branch branch, double shoot_param,
                          const SolveOptions& opts) {
  validate_params(params);
  ContactConfig config = derive_contact_config(params);
  switch (branch) {
    case Branch::OppositeMax:
      return case_opposite::assemble_max_state(shoot_param, config, params, opts);
    case Branch::OppositeMin:
      return case_opposite::assemble_min_state(shoot_param, config, params, opts);
    case Branch::SameInterior:
      return case_same::rebuild_interior(shoot_param, config, params, opts);
    case Branch::SameBoundary:
      return case_same::rebuild_boundary(shoot_param, config, params, opts);
  }
  throw SolverError(ErrorKind::DomainError, "unknown branch tag");
}

}  // namespace capwedge
