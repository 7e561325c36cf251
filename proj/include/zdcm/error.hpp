#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zdcm {

/// Failure categories surfaced by the library. Each maps to one documented
/// error condition of an operation; the CLI translates them to exit codes.
enum class ErrorCode {
  PoleInUpperHalfPlane,
  RepeatedPole,
  DegreeTooHigh,
  EvalAtPole,
  ResidueFormulaInconsistent,
  TailNotNegligible,
  EigenSolverFailure,
  UnpairedComplexRoot,
  WindowTooNarrow,
  EvenRootCount,
  DegenerateBranchSet,
  SingularDenominatorDeterminant,
  NegativeLogArgument,
  QuadratureNotConverged,
  StencilCrossesShock,
  GridTooCoarse,
  LinearSolveSingular,
  SingularSystem,
  BoxTooSmall,
  FocusingMassExceeded,
  CFLViolation,
  TestFunctionLeavesBox,
  ConfigInvalid,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace zdcm
