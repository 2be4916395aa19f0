#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "capwedge/model.hpp"

namespace capwedge {

struct SamplePoint {
  double psi;
  double x;
  double y;
};

// Free surface in the vertically shifted frame, as one or two sample lists
// with psi strictly monotone within each segment.
struct ShiftedCurve {
  std::vector<std::vector<SamplePoint>> segments;
};

// Closed-form description of one monotone-psi piece of the profile. x is
// recovered by accumulating x_increment over psi intervals; y is pointwise.
struct SegmentSpec {
  double psi_start = 0.0;
  double psi_end = 0.0;
  double x_start = 0.0;
  std::function<double(double)> height;                  // y(psi), shifted frame
  std::function<double(double, double)> x_increment;     // integral of dx/dpsi over [p, q]
};

enum class Branch { OppositeMax, OppositeMin, SameInterior, SameBoundary };

enum class ShootParamKind { ApexHeight, ApexAngle, ContactHeight };

struct ResidualReport {
  double ode_residual = 0.0;
  double bc_residual = 0.0;
  double area_residual = 0.0;
  bool polar_monotone = false;
  std::vector<std::array<double, 2>> polar_samples;  // (theta, rho)
};

struct VolumeBreakdown {
  double v1 = 0.0;
  double v2 = 0.0;
  double v3 = 0.0;
  double v4 = 0.0;
  double v5 = 0.0;
  double total = 0.0;
  double wedge_part() const { return v3 + v4 + v5; }
};

struct SteadyState {
  FluidParams params;
  ContactConfig config;
  Branch branch = Branch::OppositeMax;
  ShootParamKind param_kind = ShootParamKind::ApexHeight;
  double shoot_param = 0.0;
  double P0 = 0.0;
  std::array<double, 2> contact_left{};   // physical frame
  std::array<double, 2> contact_right{};  // physical frame
  ShiftedCurve shifted;
  std::vector<std::array<double, 2>> curve;  // physical frame samples
  ResidualReport residuals;
  std::optional<VolumeBreakdown> breakdown;  // case-1 five-piece decomposition
  double volume_total = 0.0;
  bool reduced_confidence = false;
  std::vector<std::string> diagnostics;
  // Closed-form evaluators for residual checks; empty for states rebuilt from
  // serialized sample data only.
  std::vector<SegmentSpec> segment_specs;
};

struct PolarConversion {
  std::vector<std::array<double, 2>> samples;  // (theta, rho)
  bool monotone = false;
};

// Uniform-psi sampling of the closed-form segments; endpoint psi values exact.
ShiftedCurve reconstruct(const std::vector<SegmentSpec>& specs, int samples_per_segment);

// y_phys = y_shifted + P0/g; x unchanged.
std::vector<std::array<double, 2>> to_physical(const ShiftedCurve& curve, double P0, double g);

// Physical-frame samples to polar about the wall vertex at the origin.
// Throws DomainError when a sample sits at the vertex (rho < 1e-12).
PolarConversion to_polar(const std::vector<std::array<double, 2>>& physical);

// Positive area of a simple closed polygon. When check_self_intersection is
// set, a coarse segment-pair scan flags crossings via the returned diagnostic.
double shoelace_area(const std::vector<std::array<double, 2>>& polygon,
                     bool* self_intersection_diagnostic = nullptr);

// Shoelace area of the fluid polygon: physical curve samples closed through
// the wall vertex at the origin.
double enclosed_area_physical(const std::vector<std::array<double, 2>>& physical_curve);

// Recomputes all validation residuals for a state. Uses the closed-form
// evaluators when present (tight finite-difference stencils); falls back to
// the stored samples otherwise.
ResidualReport compute_residuals(const SteadyState& state);

struct ResidualThresholds {
  double ode = 1e-6;
  double bc = 1e-8;
  double area = 1e-6;
};

bool residuals_pass(const ResidualReport& r, const ResidualThresholds& t = {});

// CSV serialization, %.17g. Shifted flavor: "psi,x,y"; physical/polar flavor:
// "theta,rho,x,y".
std::string curve_csv_shifted(const ShiftedCurve& curve);
std::string curve_csv_physical(const std::vector<std::array<double, 2>>& physical);

const char* branch_name(Branch b);
const char* shoot_param_kind_name(ShootParamKind k);

}  // namespace capwedge
