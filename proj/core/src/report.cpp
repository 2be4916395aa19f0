#include "capwedge/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace capwedge {

namespace {

std::string num(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') {
      out.push_back('\\');
      out.push_back(ch);
    } else if (ch == '\n') {
      out += "\\n";
    } else {
      out.push_back(ch);
    }
  }
  return out;
}

void params_json(std::ostringstream& os, const FluidParams& p) {
  os << "{\"g\":" << num(p.g) << ",\"sigma\":" << num(p.sigma)
     << ",\"gamma_jump\":" << num(p.gamma_jump) << ",\"theta1\":" << num(p.theta1)
     << ",\"theta2\":" << num(p.theta2) << ",\"volume\":" << num(p.volume) << "}";
}

void residuals_json(std::ostringstream& os, const ResidualReport& r) {
  os << "{\"ode_residual\":" << num(r.ode_residual)
     << ",\"bc_residual\":" << num(r.bc_residual)
     << ",\"area_residual\":" << num(r.area_residual) << ",\"polar_monotone\":"
     << (r.polar_monotone ? "true" : "false") << "}";
}

void state_json(std::ostringstream& os, const SteadyState& st, bool include_curve) {
  os << "{\"branch\":\"" << branch_name(st.branch) << "\"";
  os << ",\"shoot_param\":{\"kind\":\"" << shoot_param_kind_name(st.param_kind)
     << "\",\"value\":" << num(st.shoot_param) << "}";
  os << ",\"P0\":" << num(st.P0);
  os << ",\"volume\":" << num(st.volume_total);
  os << ",\"contacts\":{\"left\":[" << num(st.contact_left[0]) << ","
     << num(st.contact_left[1]) << "],\"right\":[" << num(st.contact_right[0]) << ","
     << num(st.contact_right[1]) << "]}";
  os << ",\"reduced_confidence\":" << (st.reduced_confidence ? "true" : "false");
  if (st.breakdown) {
    const auto& b = *st.breakdown;
    os << ",\"volume_breakdown\":{\"v1\":" << num(b.v1) << ",\"v2\":" << num(b.v2)
       << ",\"v3\":" << num(b.v3) << ",\"v4\":" << num(b.v4) << ",\"v5\":" << num(b.v5)
       << ",\"total\":" << num(b.total) << "}";
  }
  os << ",\"residuals\":";
  residuals_json(os, st.residuals);
  if (!st.diagnostics.empty()) {
    os << ",\"diagnostics\":[";
    for (size_t i = 0; i < st.diagnostics.size(); ++i) {
      if (i) os << ',';
      os << '"' << escape(st.diagnostics[i]) << '"';
    }
    os << ']';
  }
  if (include_curve) {
    os << ",\"curve\":[";
    for (size_t i = 0; i < st.curve.size(); ++i) {
      if (i) os << ',';
      os << '[' << num(st.curve[i][0]) << ',' << num(st.curve[i][1]) << ']';
    }
    os << ']';
    os << ",\"curve_shifted\":[";
    bool first = true;
    for (const auto& seg : st.shifted.segments) {
      for (const auto& pt : seg) {
        if (!first) os << ',';
        first = false;
        os << '[' << num(pt.psi) << ',' << num(pt.x) << ',' << num(pt.y) << ']';
      }
    }
    os << ']';
  }
  os << '}';
}

}  // namespace

std::string solve_result_json(const SolveResult& result, bool include_curve) {
  std::ostringstream os;
  os << "{\"schema\":\"capillary-steady/1\"";
  if (!result.states.empty()) {
    os << ",\"params\":";
    params_json(os, result.states.front().params);
  }
  os << ",\"regime\":\"" << regime_name(result.config.regime) << "\"";
  os << ",\"gamma\":" << num(result.config.gamma) << ",\"psi1\":" << num(result.config.psi1)
     << ",\"psi2\":" << num(result.config.psi2);
  os << ",\"principal\":" << result.principal;
  os << ",\"solutions\":[";
  for (size_t i = 0; i < result.states.size(); ++i) {
    if (i) os << ',';
    state_json(os, result.states[i], include_curve);
  }
  os << ']';
  if (!result.diagnostics.empty()) {
    os << ",\"diagnostics\":[";
    for (size_t i = 0; i < result.diagnostics.size(); ++i) {
      if (i) os << ',';
      os << '"' << escape(result.diagnostics[i]) << '"';
    }
    os << ']';
  }
  os << '}';
  return os.str();
}

std::string residual_report_json(const ResidualReport& report) {
  std::ostringstream os;
  residuals_json(os, report);
  return os.str();
}

std::string thresholds_json(double v_m, double v_1, bool overlap) {
  std::ostringstream os;
  os << "{\"schema\":\"capillary-steady/1\",\"v_m\":" << num(v_m) << ",\"v_1\":" << num(v_1)
     << ",\"overlap\":" << (overlap ? "true" : "false") << '}';
  return os.str();
}

}  // namespace capwedge
