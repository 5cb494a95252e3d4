#pragma once

#include <stdexcept>
#include <string>

namespace boltzgap {

enum class ErrorCode {
  InvalidArgument,
  Config,
  Io,
  GridTooCoarse,
  DiagonalSingularity,
  NonConvergence,
  Precondition,
  DegenerateZero,
  Degenerate,
  Singular,
  Infeasible,
  DiscretizationInconsistent,
  PositivityViolation,
  Conservation,
  Window,
  Range,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries a code and, for
/// configuration problems, the offending key.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string key = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& key() const noexcept { return key_; }

 private:
  ErrorCode code_;
  std::string key_;
};

}  // namespace boltzgap
