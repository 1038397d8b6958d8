#include "germkit/error.hpp"

namespace germ {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::RingMismatch: return "RING-MISMATCH";
    case ErrorCode::IterationLimit: return "ITERATION-LIMIT";
    case ErrorCode::Parse: return "PARSE";
    case ErrorCode::Schema: return "SCHEMA";
    case ErrorCode::DanglingReference: return "DANGLING-REFERENCE";
    case ErrorCode::OutOfRange: return "OUT-OF-RANGE";
    case ErrorCode::Nonisolated: return "NONISOLATED";
    case ErrorCode::Nonsingular: return "NONSINGULAR";
    case ErrorCode::Violation: return "VIOLATION";
    case ErrorCode::Degenerate: return "DEGENERATE";
    case ErrorCode::Instability: return "INSTABILITY";
    case ErrorCode::InexactBranchPoint: return "INEXACT-BRANCH-POINT";
    case ErrorCode::Improper: return "IMPROPER";
    case ErrorCode::UndefinedLe: return "UNDEFINED-LE";
    case ErrorCode::HypothesisFail: return "HYPOTHESIS-FAIL";
    case ErrorCode::NonisolatedAtThreshold: return "NONISOLATED-AT-THRESHOLD";
    case ErrorCode::MissingSlice: return "MISSING-SLICE";
    case ErrorCode::UnknownFixture: return "UNKNOWN-FIXTURE";
    case ErrorCode::NonlinearSlice: return "NONLINEAR-SLICE";
    case ErrorCode::MissingBranches: return "MISSING-BRANCHES";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : Error(ErrorCode::Parse,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

}  // namespace germ
