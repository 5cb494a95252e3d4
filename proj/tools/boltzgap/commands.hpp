#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "boltzgap/error.hpp"
#include "config.hpp"

namespace boltzgap::cli {

enum ExitCode { kPass = 0, kVerificationFailure = 1, kConfigError = 2, kNumericalError = 3 };

/// Configuration and input problems map to 2, everything numerical to 3.
int exit_code_for(ErrorCode code);

/// {"error": {"code", "key", "message", "exit_code"}}
std::string error_json(const Error& e);

struct Invocation {
  std::string command;
  RunConfig config;
  std::filesystem::path out_dir;
};

/// Runs one subcommand, writing its files into inv.out_dir and a one-line
/// summary to `log`. Returns 0 or 1; library errors propagate.
int run(const Invocation& inv, std::ostream& log);

}  // namespace boltzgap::cli
