#pragma once

#include <stdexcept>
#include <string>

namespace capwedge {

enum class ErrorKind {
  InvalidParams,
  DomainError,
  DegenerateGeometry,
  UnsupportedGeometry,
  ToleranceNotMet,
  DivergentIntegral,
  BracketFailure,
  NoConvergence,
  ValidationFailure,
  ScanFailure,
};

class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidParams: return "invalid-params";
    case ErrorKind::DomainError: return "domain-error";
    case ErrorKind::DegenerateGeometry: return "degenerate-geometry";
    case ErrorKind::UnsupportedGeometry: return "unsupported-geometry";
    case ErrorKind::ToleranceNotMet: return "tolerance-not-met";
    case ErrorKind::DivergentIntegral: return "divergent-integral";
    case ErrorKind::BracketFailure: return "bracket-failure";
    case ErrorKind::NoConvergence: return "no-convergence";
    case ErrorKind::ValidationFailure: return "validation-failure";
    case ErrorKind::ScanFailure: return "scan-failure";
  }
  return "unknown";
}

}  // namespace capwedge
