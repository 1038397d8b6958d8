#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace germ {

enum class ErrorCode {
  RingMismatch,
  IterationLimit,
  Parse,
  Schema,
  DanglingReference,
  OutOfRange,
  Nonisolated,
  Nonsingular,
  Violation,
  Degenerate,
  Instability,
  InexactBranchPoint,
  Improper,
  UndefinedLe,
  HypothesisFail,
  NonisolatedAtThreshold,
  MissingSlice,
  UnknownFixture,
  NonlinearSlice,
  MissingBranches,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure in the library surfaces as this exception. The message is
/// prefixed with the upper-case code name so the CLI can print it verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

/// Parse failures carry a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Computation caps shared by every algorithm. Nothing loops without one.
struct Limits {
  std::size_t max_steps = 1'000'000;  // reduction steps per basis computation
  unsigned tau_ladder = 8;            // rungs of 1/2, 1/4, ... for slice points
  unsigned linear_ladder = 8;         // candidate generic linear forms
  unsigned power_cap = 16;            // radical membership: largest power tried
  unsigned trunc_cap = 4096;          // largest series truncation after doubling

  friend bool operator==(const Limits&, const Limits&) = default;
};

/// Counts reduction steps and throws once the cap is exceeded.
class StepBudget {
 public:
  explicit StepBudget(std::size_t cap) : cap_(cap) {}

  void tick(std::size_t n = 1) {
    used_ += n;
    if (used_ > cap_) {
      throw Error(ErrorCode::IterationLimit,
                  "more than " + std::to_string(cap_) + " reduction steps");
    }
  }
  std::size_t used() const noexcept { return used_; }

 private:
  std::size_t cap_;
  std::size_t used_ = 0;
};

}  // namespace germ
