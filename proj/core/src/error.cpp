#include "boltzgap/error.hpp"

#include <utility>

namespace boltzgap {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::Config: return "config-error";
    case ErrorCode::Io: return "io-error";
    case ErrorCode::GridTooCoarse: return "grid-too-coarse";
    case ErrorCode::DiagonalSingularity: return "diagonal-singularity";
    case ErrorCode::NonConvergence: return "quadrature-non-convergence";
    case ErrorCode::Precondition: return "precondition-violation";
    case ErrorCode::DegenerateZero: return "degenerate-zero";
    case ErrorCode::Degenerate: return "degenerate";
    case ErrorCode::Singular: return "singular-matrix";
    case ErrorCode::Infeasible: return "infeasible";
    case ErrorCode::DiscretizationInconsistent: return "discretization-inconsistent";
    case ErrorCode::PositivityViolation: return "positivity-violation";
    case ErrorCode::Conservation: return "conservation-error";
    case ErrorCode::Window: return "window-error";
    case ErrorCode::Range: return "range-error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::string key)
    : std::runtime_error(message), code_(code), key_(std::move(key)) {}

}  // namespace boltzgap
