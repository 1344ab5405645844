#pragma once

#include <stdexcept>
#include <string>

namespace regret_frontier {

enum class ErrorCode {
  kInvalidInput,
  kDimensionMismatch,
  kInvalidMdp,
  kInvalidSpec,
  kCapacityExceeded,
  kOptimalActionQueried,
  kNotFullSupport,
  kAssumptionViolated,
  kDegenerateGaps,
  kUnsupportedRewardFamily,
  kUnsupported,
  kDegenerateProblem,
  kGenerationFailed,
  kSolverStalled,
  kNumericalFailure,
  kEmptyInput,
  kIo,
};

const char* error_code_name(ErrorCode code);

// Process exit code for the CLI: 2 invalid input, 3 precondition violation,
// 4 numerical failure.
int exit_code_for(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace regret_frontier
