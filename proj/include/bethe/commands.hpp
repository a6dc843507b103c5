#pragma once

#include <cstdint>
#include <string>

#include "bethe/io.hpp"

namespace bethe {

struct RunConfig {
  std::uint64_t seed = 0;
  std::size_t n_starts = 200;
  double tol_newton = 1e-12;
  double tol_verify = 1e-8;
  bool exact = true;

  void validate() const;
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitPrecondition = 3;

struct CommandResult {
  io::Json report;
  int exit_code = kExitPass;
  std::string summary;  // one line for stderr
};

// Reports depend only on (input, config); the same pair gives the same bytes.
CommandResult cmd_analyze(const io::Json& arrangement);
CommandResult cmd_critical(const io::Json& arrangement, const RunConfig& config);
CommandResult cmd_verify(const io::Json& arrangement, const RunConfig& config);
CommandResult cmd_gaudin(const io::Json& problem, const RunConfig& config);

}  // namespace bethe
