#include "regret_frontier/error.hpp"

namespace regret_frontier {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidMdp: return "InvalidMdp";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kCapacityExceeded: return "CapacityExceeded";
    case ErrorCode::kOptimalActionQueried: return "OptimalActionQueried";
    case ErrorCode::kNotFullSupport: return "NotFullSupport";
    case ErrorCode::kAssumptionViolated: return "AssumptionViolated";
    case ErrorCode::kDegenerateGaps: return "DegenerateGaps";
    case ErrorCode::kUnsupportedRewardFamily: return "UnsupportedRewardFamily";
    case ErrorCode::kUnsupported: return "Unsupported";
    case ErrorCode::kDegenerateProblem: return "DegenerateProblem";
    case ErrorCode::kGenerationFailed: return "GenerationFailed";
    case ErrorCode::kSolverStalled: return "SolverStalled";
    case ErrorCode::kNumericalFailure: return "NumericalFailure";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kInvalidMdp:
    case ErrorCode::kInvalidSpec:
    case ErrorCode::kEmptyInput:
    case ErrorCode::kIo:
      return 2;
    case ErrorCode::kSolverStalled:
    case ErrorCode::kNumericalFailure:
      return 4;
    default:
      return 3;
  }
}

}  // namespace regret_frontier
