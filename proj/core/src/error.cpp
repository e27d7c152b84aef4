#include "tpl/error.hpp"

namespace tpl {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DIVISION_BY_ZERO";
    case ErrorCode::DescriptorMismatch: return "DESCRIPTOR_MISMATCH";
    case ErrorCode::ValuationMismatch: return "VALUATION_MISMATCH";
    case ErrorCode::InvalidDescriptor: return "INVALID_DESCRIPTOR";
    case ErrorCode::UnsupportedOrder: return "UNSUPPORTED_ORDER";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::AxiomViolation: return "AXIOM_VIOLATION";
    case ErrorCode::Disconnected: return "DISCONNECTED";
    case ErrorCode::NotConstructed: return "NOT_CONSTRUCTED";
    case ErrorCode::NotTwoMinimizers: return "NOT_TWO_MINIMIZERS";
    case ErrorCode::ZeroEntry: return "ZERO_ENTRY";
    case ErrorCode::NotAZeroRectangle: return "NOT_A_ZERO_RECTANGLE";
    case ErrorCode::ZeroScalar: return "ZERO_SCALAR";
    case ErrorCode::TruncationTooShallow: return "TRUNCATION_TOO_SHALLOW";
    case ErrorCode::ShapeMismatch: return "SHAPE_MISMATCH";
    case ErrorCode::InvalidChoice: return "INVALID_CHOICE";
    case ErrorCode::PreconditionViolated: return "PRECONDITION_VIOLATED";
    case ErrorCode::RankTooHigh: return "RANK_TOO_HIGH";
    case ErrorCode::NotACycle: return "NOT_A_CYCLE";
    case ErrorCode::InvalidChartData: return "INVALID_CHART_DATA";
    case ErrorCode::NoOverlap: return "NO_OVERLAP";
    case ErrorCode::OverlapOnBaseColumn: return "OVERLAP_ON_BASE_COLUMN";
    case ErrorCode::ChartActive: return "CHART_ACTIVE";
    case ErrorCode::NoValidBridge: return "NO_VALID_BRIDGE";
    case ErrorCode::SearchExhausted: return "SEARCH_EXHAUSTED";
    case ErrorCode::ScanTooLarge: return "SCAN_TOO_LARGE";
    case ErrorCode::NotDegenerate: return "NOT_DEGENERATE";
    case ErrorCode::CharThree: return "CHAR_THREE";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

namespace {
std::string compose(ErrorCode code, const std::string& detail) {
  std::string msg(to_string(code));
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  return msg;
}
}  // namespace

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(compose(code, detail)), code_(code), detail_(detail) {}

void fail(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

}  // namespace tpl
