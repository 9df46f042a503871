#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace beliefs {

enum class ErrorCode {
  InvalidArgument,
  NegativeEntry,
  RowSumOutOfTolerance,
  DimensionMismatch,
  NotSquare,
  TooSmall,
  ZeroRow,
  ZeroColumn,
  ShapeMismatch,
  BudgetExceeded,
  NotSIA,
  NotIndecomposable,
  NotAperiodic,
  NotConvergentFamily,
  SingularSystem,
  LengthMismatch,
  InfiniteDivergence,
  EmptySubset,
  NonConvergence,
  StepLimitReached,
  WrongDimension,
  ParseError,
};

std::string_view to_string(ErrorCode code);

// Every failure surfaced by the library is an Error; the code identifies the
// contract that was violated and what() carries the context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  // The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace beliefs
