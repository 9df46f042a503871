#include "beliefs/error.hpp"

namespace beliefs {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::RowSumOutOfTolerance: return "RowSumOutOfTolerance";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::ZeroRow: return "ZeroRow";
    case ErrorCode::ZeroColumn: return "ZeroColumn";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotSIA: return "NotSIA";
    case ErrorCode::NotIndecomposable: return "NotIndecomposable";
    case ErrorCode::NotAperiodic: return "NotAperiodic";
    case ErrorCode::NotConvergentFamily: return "NotConvergentFamily";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InfiniteDivergence: return "InfiniteDivergence";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::StepLimitReached: return "StepLimitReached";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

}  // namespace beliefs
