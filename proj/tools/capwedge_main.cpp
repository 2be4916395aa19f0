// Command-line front end: solve | sweep | validate | thresholds.
//
// Exit codes: 0 ok, 1 input error, 2 validation failure, 3 numerical failure.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "capwedge/case_opposite.hpp"
#include "capwedge/case_same.hpp"
#include "capwedge/curve.hpp"
#include "capwedge/error.hpp"
#include "capwedge/model.hpp"
#include "capwedge/report.hpp"
#include "capwedge/solver.hpp"

namespace cw = capwedge;
using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct RunConfig {
  cw::FluidParams params;
  int samples = 512;
  double tol = 1e-10;
  std::string out;
  std::string format = "json";
  bool degrees = false;
  // sweep axis
  std::string axis = "um";
  double from = -10.0;
  double to = -0.01;
  int count = 64;
  std::string input;  // validate input file
};

int exit_code_for(const cw::SolverError& e) {
  switch (e.kind()) {
    case cw::ErrorKind::InvalidParams:
    case cw::ErrorKind::DomainError:
    case cw::ErrorKind::UnsupportedGeometry:
      return 1;
    case cw::ErrorKind::ValidationFailure:
      return 2;
    default:
      return 3;
  }
}

cw::SolveOptions make_options(const RunConfig& rc) {
  cw::SolveOptions opts;
  opts.curve_samples = rc.samples;
  const double scale = rc.tol / 1e-10;
  opts.quad_tol = rc.tol;
  opts.volume_tol_abs = 1e-8 * scale;
  opts.param_tol = 1e-12 * scale;
  return opts;
}

void write_output(const RunConfig& rc, const std::string& text) {
  if (rc.out.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream f(rc.out, std::ios::binary);
  if (!f) {
    throw cw::SolverError(cw::ErrorKind::InvalidParams, "cannot open output file: " + rc.out);
  }
  f << text << '\n';
}

void load_config_file(const std::string& path, RunConfig* rc) {
  std::ifstream f(path);
  if (!f) {
    throw cw::SolverError(cw::ErrorKind::InvalidParams, "cannot open config file: " + path);
  }
  json j;
  f >> j;
  auto get = [&](const char* key, double* dst) {
    if (j.contains(key)) *dst = j[key].get<double>();
  };
  get("g", &rc->params.g);
  get("sigma", &rc->params.sigma);
  get("gamma_jump", &rc->params.gamma_jump);
  get("theta1", &rc->params.theta1);
  get("theta2", &rc->params.theta2);
  get("volume", &rc->params.volume);
  if (j.contains("samples")) rc->samples = j["samples"].get<int>();
  if (j.contains("tol")) rc->tol = j["tol"].get<double>();
  if (j.contains("format")) rc->format = j["format"].get<std::string>();
  if (j.contains("degrees")) rc->degrees = j["degrees"].get<bool>();
  if (j.contains("axis")) rc->axis = j["axis"].get<std::string>();
  if (j.contains("from")) rc->from = j["from"].get<double>();
  if (j.contains("to")) rc->to = j["to"].get<double>();
  if (j.contains("count")) rc->count = j["count"].get<int>();
}

void finalize_config(RunConfig* rc) {
  if (rc->degrees) {
    rc->params.theta1 *= kPi / 180.0;
    rc->params.theta2 *= kPi / 180.0;
  }
  if (rc->samples < 16) {
    throw cw::SolverError(cw::ErrorKind::InvalidParams, "samples must be >= 16");
  }
  if (!(rc->tol > 0.0)) {
    throw cw::SolverError(cw::ErrorKind::InvalidParams, "tol must be positive");
  }
}

int run_solve(const RunConfig& rc) {
  cw::SolveOptions opts = make_options(rc);
  cw::SolveResult res = cw::solve(rc.params, opts);
  for (const auto& d : res.diagnostics) std::cerr << "note: " << d << '\n';
  for (const auto& st : res.states) {
    for (const auto& d : st.diagnostics) std::cerr << "note: " << d << '\n';
  }
  if (rc.format == "csv") {
    write_output(rc, cw::curve_csv_physical(res.states[res.principal].curve));
  } else {
    write_output(rc, cw::solve_result_json(res));
  }
  if (rc.params.volume > 0.0) {
    for (const auto& st : res.states) {
      if (!cw::residuals_pass(st.residuals)) {
        std::cerr << "validation failure: residuals exceed thresholds ("
                  << cw::residual_report_json(st.residuals) << ")\n";
        return 2;
      }
    }
  }
  return 0;
}

int run_sweep(const RunConfig& rc) {
  cw::FluidParams p = rc.params;
  cw::validate_params(p);
  cw::ContactConfig config = cw::derive_contact_config(p);
  const int n = rc.count;
  if (n < 2) {
    throw cw::SolverError(cw::ErrorKind::InvalidParams, "sweep count must be >= 2");
  }

  // canonicalize the same-sign orientation so the branch parametrizations apply
  cw::FluidParams cp = p;
  cw::ContactConfig cc = config;
  if (config.regime == cw::Regime::SameSign && config.psi1 >= 0.0 && config.psi2 >= 0.0 &&
      !(config.psi1 == 0.0 && config.psi2 == 0.0)) {
    std::swap(cp.theta1, cp.theta2);
    cc.psi1 = -config.psi2;
    cc.psi2 = -config.psi1;
    cc.psi1_is_larger = (cc.psi1 >= cc.psi2);
  }

  auto value_at = [&](double x) -> double {
    if (rc.axis == "um") {
      if (config.regime == cw::Regime::OppositeMax) {
        return cw::case_opposite::volume(x, config, p, rc.tol).total;
      }
      if (config.regime == cw::Regime::OppositeMin) {
        return cw::case_opposite::volume_min(x, config, p, rc.tol).total;
      }
      throw cw::SolverError(cw::ErrorKind::InvalidParams,
                            "axis um applies to the opposite-sign regimes");
    }
    if (rc.axis == "psi_m") {
      if (config.regime != cw::Regime::SameSign) {
        throw cw::SolverError(cw::ErrorKind::InvalidParams,
                              "axis psi_m applies to the same-sign regime");
      }
      return cw::case_same::interior_volume(x, cc, cp, rc.tol).volume;
    }
    if (rc.axis == "u1") {
      if (config.regime != cw::Regime::SameSign) {
        throw cw::SolverError(cw::ErrorKind::InvalidParams,
                              "axis u1 applies to the same-sign regime");
      }
      return cw::case_same::boundary_volume(x, cc, cp, rc.tol);
    }
    throw cw::SolverError(cw::ErrorKind::InvalidParams, "unknown sweep axis: " + rc.axis);
  };

  std::vector<double> xs(n), vals(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = rc.from + (rc.to - rc.from) * static_cast<double>(i) / (n - 1);
  }
  // axis points are independent; split across a few workers
  const int workers = std::min(4, n);
  std::vector<std::future<void>> futs;
  std::atomic<int> next{0};
  std::mutex err_mutex;
  std::optional<std::string> first_error;
  std::optional<cw::ErrorKind> first_kind;
  for (int wi = 0; wi < workers; ++wi) {
    futs.push_back(std::async(std::launch::async, [&]() {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          vals[i] = value_at(xs[i]);
        } catch (const cw::SolverError& e) {
          std::lock_guard<std::mutex> lk(err_mutex);
          if (!first_error) {
            first_error = e.what();
            first_kind = e.kind();
          }
          vals[i] = std::nan("");
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lk(err_mutex);
          if (!first_error) first_error = e.what();
          vals[i] = std::nan("");
        }
      }
    }));
  }
  for (auto& f : futs) f.get();
  if (first_error) {
    throw cw::SolverError(first_kind.value_or(cw::ErrorKind::ScanFailure), *first_error);
  }

  std::ostringstream os;
  os << "index," << rc.axis << ",volume,direction\n";
  char buf[64];
  for (int i = 0; i < n; ++i) {
    const char* dir = "-";
    if (i > 0) {
      dir = (vals[i] > vals[i - 1]) ? "inc" : (vals[i] < vals[i - 1]) ? "dec" : "flat";
    }
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,", i, xs[i], vals[i]);
    os << buf << dir << '\n';
  }
  write_output(rc, os.str());
  return 0;
}

int run_validate(const RunConfig& rc) {
  if (rc.input.empty()) {
    throw cw::SolverError(cw::ErrorKind::InvalidParams, "validate requires --in <solution.json>");
  }
  std::ifstream f(rc.input);
  if (!f) {
    throw cw::SolverError(cw::ErrorKind::InvalidParams, "cannot open " + rc.input);
  }
  json j;
  f >> j;
  if (!j.contains("schema") || j["schema"].get<std::string>() != "capillary-steady/1") {
    throw cw::SolverError(cw::ErrorKind::InvalidParams, "unrecognized solution schema");
  }
  cw::FluidParams p;
  const json& jp = j.at("params");
  p.g = jp.at("g").get<double>();
  p.sigma = jp.at("sigma").get<double>();
  p.gamma_jump = jp.at("gamma_jump").get<double>();
  p.theta1 = jp.at("theta1").get<double>();
  p.theta2 = jp.at("theta2").get<double>();
  p.volume = jp.at("volume").get<double>();

  cw::SolveOptions opts = make_options(rc);
  bool all_pass = true;
  size_t idx = 0;
  for (const json& js : j.at("solutions")) {
    const std::string bname = js.at("branch").get<std::string>();
    cw::Branch branch;
    if (bname == "opposite-max") branch = cw::Branch::OppositeMax;
    else if (bname == "opposite-min") branch = cw::Branch::OppositeMin;
    else if (bname == "same-interior") branch = cw::Branch::SameInterior;
    else if (bname == "same-boundary") branch = cw::Branch::SameBoundary;
    else throw cw::SolverError(cw::ErrorKind::InvalidParams, "unknown branch: " + bname);
    const double sp = js.at("shoot_param").at("value").get<double>();

    if (p.volume == 0.0) {
      std::cout << "solution " << idx++ << ": degenerate (V = 0), nothing to validate\n";
      continue;
    }
    cw::SteadyState st = cw::rebuild_state(p, branch, sp, opts);
    cw::ResidualReport rep = st.residuals;
    const bool ok = cw::residuals_pass(rep);
    all_pass = all_pass && ok;
    std::cout << "solution " << idx++ << ": " << (ok ? "PASS" : "FAIL") << ' '
              << cw::residual_report_json(rep) << '\n';
  }
  return all_pass ? 0 : 2;
}

int run_thresholds(const RunConfig& rc) {
  cw::FluidParams p = rc.params;
  cw::validate_params(p);
  cw::ContactConfig config = cw::derive_contact_config(p);
  if (config.regime != cw::Regime::SameSign) {
    throw cw::SolverError(cw::ErrorKind::InvalidParams,
                          "thresholds apply to the same-sign regime only (got " +
                              std::string(cw::regime_name(config.regime)) + ")");
  }
  cw::SolveOptions opts = make_options(rc);
  auto th = cw::case_same::thresholds(config, p, opts);
  write_output(rc, cw::thresholds_json(th.v_m, th.v_1, th.overlap));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig rc;

  // config file first, flags override
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        load_config_file(argv[i + 1], &rc);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
      }
    }
  }

  CLI::App app{"steady gravity-capillary free surfaces in a wedge"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags take precedence)");

  auto add_common = [&](CLI::App* sub) {
    // --config is consumed by the pre-scan above; registered so CLI11 accepts it
    sub->add_option("--config", config_path, "JSON config file (flags take precedence)");
    sub->add_option("--g", rc.params.g, "gravitational acceleration");
    sub->add_option("--sigma", rc.params.sigma, "surface tension");
    sub->add_option("--gamma-jump", rc.params.gamma_jump, "interfacial energy difference");
    sub->add_option("--theta1", rc.params.theta1, "left wall inclination");
    sub->add_option("--theta2", rc.params.theta2, "right wall inclination");
    sub->add_option("--volume", rc.params.volume, "prescribed fluid area");
    sub->add_option("--samples", rc.samples, "curve samples per segment (>= 16)");
    sub->add_option("--tol", rc.tol, "quadrature tolerance (absolute)");
    sub->add_option("--out", rc.out, "output path (default stdout)");
    sub->add_option("--format", rc.format, "output format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--degrees", rc.degrees, "wall angles given in degrees");
  };

  CLI::App* solve_cmd = app.add_subcommand("solve", "solve for the prescribed volume");
  add_common(solve_cmd);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "tabulate branch volume over a parameter");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--axis", rc.axis, "sweep parameter: um|psi_m|u1")
      ->check(CLI::IsMember({"um", "psi_m", "u1"}));
  sweep_cmd->add_option("--from", rc.from, "axis start");
  sweep_cmd->add_option("--to", rc.to, "axis end");
  sweep_cmd->add_option("--count", rc.count, "number of axis points");

  CLI::App* validate_cmd = app.add_subcommand("validate", "recheck a stored solution file");
  add_common(validate_cmd);
  validate_cmd->add_option("--in", rc.input, "solution JSON produced by solve");

  CLI::App* thresholds_cmd =
      app.add_subcommand("thresholds", "same-sign branch volume thresholds");
  add_common(thresholds_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    finalize_config(&rc);
    if (solve_cmd->parsed()) return run_solve(rc);
    if (sweep_cmd->parsed()) return run_sweep(rc);
    if (validate_cmd->parsed()) return run_validate(rc);
    if (thresholds_cmd->parsed()) return run_thresholds(rc);
    std::cerr << "error: no subcommand\n";
    return 1;
  } catch (const cw::SolverError& e) {
    std::cerr << "error (" << cw::error_kind_name(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
