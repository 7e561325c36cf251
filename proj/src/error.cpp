#include "zdcm/error.hpp"

namespace zdcm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::PoleInUpperHalfPlane: return "PoleInUpperHalfPlane";
    case ErrorCode::RepeatedPole: return "RepeatedPole";
    case ErrorCode::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorCode::EvalAtPole: return "EvalAtPole";
    case ErrorCode::ResidueFormulaInconsistent: return "ResidueFormulaInconsistent";
    case ErrorCode::TailNotNegligible: return "TailNotNegligible";
    case ErrorCode::EigenSolverFailure: return "EigenSolverFailure";
    case ErrorCode::UnpairedComplexRoot: return "UnpairedComplexRoot";
    case ErrorCode::WindowTooNarrow: return "WindowTooNarrow";
    case ErrorCode::EvenRootCount: return "EvenRootCount";
    case ErrorCode::DegenerateBranchSet: return "DegenerateBranchSet";
    case ErrorCode::SingularDenominatorDeterminant: return "SingularDenominatorDeterminant";
    case ErrorCode::NegativeLogArgument: return "NegativeLogArgument";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::StencilCrossesShock: return "StencilCrossesShock";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::LinearSolveSingular: return "LinearSolveSingular";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::BoxTooSmall: return "BoxTooSmall";
    case ErrorCode::FocusingMassExceeded: return "FocusingMassExceeded";
    case ErrorCode::CFLViolation: return "CFLViolation";
    case ErrorCode::TestFunctionLeavesBox: return "TestFunctionLeavesBox";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace zdcm
