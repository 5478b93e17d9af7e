#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mfmaps {

enum class Err : int {
  OutsideOmega,         // tangent vector leaves the local-addition domain
  OutsidePrime,         // point pair outside the (pi, Sigma) image
  ChartTooLarge,        // Lie chart radius beyond the instance cap
  Unsupported,          // no construction available for this instance
  GridMismatch,
  NotCompactlySupported,
  NotNodeAligned,
  OverlapConflict,
  CoverageGap,
  BadNesting,
  DomainViolation,
  BadIndex,
  NotProduct,
  ChartDomainViolation,
  IncompatibleFrame,
  OutsideChart,
  EvalFailure,
  ConfigError,
  IoError,
};

const char* err_name(Err e);

/// Library error. `node` carries the offending grid node index when the
/// failure is localized (-1 otherwise) so loaders and chart operations can
/// report exactly where a precondition broke.
class Error : public std::runtime_error {
 public:
  Error(Err code, std::string msg, std::int64_t node = -1)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg +
                           (node >= 0 ? " (node " + std::to_string(node) + ")" : "")),
        code_(code),
        node_(node) {}

  Err code() const { return code_; }
  std::int64_t node() const { return node_; }

 private:
  Err code_;
  std::int64_t node_;
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::OutsideOmega: return "OutsideOmega";
    case Err::OutsidePrime: return "OutsidePrime";
    case Err::ChartTooLarge: return "ChartTooLarge";
    case Err::Unsupported: return "Unsupported";
    case Err::GridMismatch: return "GridMismatch";
    case Err::NotCompactlySupported: return "NotCompactlySupported";
    case Err::NotNodeAligned: return "NotNodeAligned";
    case Err::OverlapConflict: return "OverlapConflict";
    case Err::CoverageGap: return "CoverageGap";
    case Err::BadNesting: return "BadNesting";
    case Err::DomainViolation: return "DomainViolation";
    case Err::BadIndex: return "BadIndex";
    case Err::NotProduct: return "NotProduct";
    case Err::ChartDomainViolation: return "ChartDomainViolation";
    case Err::IncompatibleFrame: return "IncompatibleFrame";
    case Err::OutsideChart: return "OutsideChart";
    case Err::EvalFailure: return "EvalFailure";
    case Err::ConfigError: return "ConfigError";
    case Err::IoError: return "IoError";
  }
  return "Unknown";
}

/// Default tolerance policy. `scale` multiplies every default; it is read
/// from the MFMAPS_TOL environment variable by the CLI/C API layer.
struct Tolerances {
  double point_tol = 1e-9;    // membership / tangency
  double round_tol = 1e-10;   // theta round trips
  double frame_tol = 1e-10;   // frame overlap compatibility
  double min_order = 1.8;     // FD convergence order gate

  static Tolerances scaled(double s) {
    Tolerances t;
    t.point_tol *= s;
    t.round_tol *= s;
    t.frame_tol *= s;
    return t;
  }
};

}  // namespace mfmaps
