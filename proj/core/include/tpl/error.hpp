#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tpl {

enum class ErrorCode {
  DivisionByZero,
  DescriptorMismatch,
  ValuationMismatch,
  InvalidDescriptor,
  UnsupportedOrder,
  ParseError,
  AxiomViolation,
  Disconnected,
  NotConstructed,
  NotTwoMinimizers,
  ZeroEntry,
  NotAZeroRectangle,
  ZeroScalar,
  TruncationTooShallow,
  ShapeMismatch,
  InvalidChoice,
  PreconditionViolated,
  RankTooHigh,
  NotACycle,
  InvalidChartData,
  NoOverlap,
  OverlapOnBaseColumn,
  ChartActive,
  NoValidBridge,
  SearchExhausted,
  ScanTooLarge,
  NotDegenerate,
  CharThree,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& detail = {});

}  // namespace tpl
